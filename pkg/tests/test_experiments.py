"""Exhaustive-verification experiments: verdicts, determinism, resume logic,
and the vectorized scanner's agreement with the brute-force route."""

import json
import os

import numpy as np
import pytest

import spreadlab.experiments as ex
from spreadlab import (ExperimentSpec, QPoly, build_tower, even3_admissible,
                       is_permutation_brute, q_from_pair, run_experiment)
from spreadlab.experiments import (VerdictReport, _clear_state, _init_even8,
                                   _load_state, _save_state, even3_perm_predicate,
                                   report_write, verify_hermite,
                                   verify_no_typeC_even_8dim, verify_no_typeC_odd,
                                   verify_planar_dichotomy)


# -- odd q, even n nonexistence -----------------------------------------------------


def test_odd_confirmed():
    rep = run_experiment(ExperimentSpec("no-typec-odd", {"q": 3, "n": 2}))
    assert rep.verdict == "confirmed" and rep.exit_code == 0
    assert rep.candidates == 648
    assert rep.details == {"polynomials": 81, "deltas": 8}
    assert rep.counterexample is None


def test_odd_parallel_matches_serial():
    one = verify_no_typeC_odd({"q": 3, "n": 2}, jobs=1)
    two = verify_no_typeC_odd({"q": 3, "n": 2}, jobs=2)
    assert (one.verdict, one.candidates) == (two.verdict, two.candidates)


def test_odd_counterexample_payload(monkeypatch):
    # force a hit on the very first candidate and check the payload shape
    monkeypatch.setattr(ex, "permutes_cosets", lambda Q: True)
    rep = verify_no_typeC_odd({"q": 3, "n": 2})
    assert rep.verdict == "counterexample" and rep.exit_code == 2
    assert rep.candidates == 1
    ctx = build_tower(3, 1, 2)
    assert rep.counterexample == {"L_coeffs": [0, 0],
                                  "delta": int(ctx.find_deltas()[0])}


def test_odd_preconditions():
    with pytest.raises(ValueError):
        verify_no_typeC_odd({"q": 2, "n": 2})
    with pytest.raises(ValueError):
        verify_no_typeC_odd({"q": 3, "n": 3})
    with pytest.raises(ValueError):
        verify_no_typeC_odd({"q": 3, "n": 4})      # 81^4 polynomials: over budget


# -- even q, n = 3 classification ------------------------------------------------------


def test_classification_confirmed():
    rep = run_experiment(ExperimentSpec("even3-classification", {"q": 2}))
    assert rep.verdict == "confirmed"
    assert rep.candidates == 64 * 56 == 3584
    assert rep.details["permutation_pairs"] == 448
    assert rep.details["monic_polynomials"] == 64
    assert rep.details["deltas"] == 56


def test_classification_predicate_at_trace(c213):
    # d0 = d1 = 1 makes L the trace; the predicate must then mark exactly
    # the deltas that admit the spread construction
    outside = [d for d in range(1, c213.N) if not c213.in_subfield(d, "qn")]
    marked = [d for d in outside if even3_perm_predicate(c213, 1, 1, d)]
    assert marked == [d for d in outside if even3_admissible(c213, d)]
    assert len(marked) == 8


# -- Hermite coefficient ---------------------------------------------------------------


def test_hermite_confirmed(c213):
    rep = verify_hermite({"q": 2})
    assert rep.verdict == "confirmed"
    assert rep.candidates == 56
    # spot-check the identity directly on a few deltas
    outside = [d for d in range(1, c213.N) if not c213.in_subfield(d, "qn")]
    for d in outside[:3]:
        assert ex.hermite_coefficient_check(c213, d)


def test_hermite_guards(c213, c313):
    with pytest.raises(ValueError):
        ex.hermite_coefficient_check(c213, 1)          # delta inside F_8
    with pytest.raises(ValueError):
        ex.hermite_coefficient_check(c313, c313.find_deltas()[0])   # odd q


# -- planarity dichotomy -----------------------------------------------------------------


def test_dichotomy_sample_reproducible():
    a = verify_planar_dichotomy({"q": 3, "m": 3, "k": 1, "sample": 100}, seed=5)
    b = verify_planar_dichotomy({"q": 3, "m": 3, "k": 1, "sample": 100}, seed=5)
    assert a.verdict == b.verdict == "confirmed"
    # full boundary (2N - 1 pairs) plus the sampled bulk
    assert a.candidates == b.candidates == 2 * 729 - 1 + 100
    assert a.details["w"] == b.details["w"]


def test_dichotomy_preconditions():
    with pytest.raises(ValueError):
        verify_planar_dichotomy({"q": 2, "m": 3, "k": 1, "sample": 1})
    with pytest.raises(ValueError):
        verify_planar_dichotomy({"q": 3, "m": 3, "k": 3, "sample": 1})
    with pytest.raises(ValueError):
        verify_planar_dichotomy({"q": 3, "m": 4, "k": 1})   # full scan over budget


# -- 8-dimensional even scan: checkpointing and the vectorized kernel ----------------------


def test_state_round_trip(tmp_path):
    out = str(tmp_path / "r.json")
    _save_state(out, "k1", delta_pos=5, candidates=10)
    assert _load_state(out, "k1") == {"key": "k1", "delta_pos": 5, "candidates": 10}
    assert _load_state(out, "other") is None
    _clear_state(out)
    assert _load_state(out, "k1") is None
    _clear_state(out)                       # idempotent
    with open(out + ".state", "w") as fh:
        fh.write("{broken")
    assert _load_state(out, "k1") is None
    os.remove(out + ".state")


def test_even8_resume_completes(tmp_path):
    # resume four deltas from the end of a fabricated checkpoint; totals must
    # line up with the known full-run census
    out = str(tmp_path / "even8.json")
    _save_state(out, "no-typec-even8:q=2", delta_pos=236,
                candidates=236 * 65536, perm_pairs=236 * 16, seconds=12.5)
    rep = verify_no_typeC_even_8dim({"q": 2}, out=out)
    assert rep.verdict == "confirmed"
    assert rep.candidates == 240 * 65536
    assert rep.details["permutation_pairs"] == 3840
    assert rep.details["desarguesian_pairs"] == 3840
    assert rep.seconds >= 12.5
    assert not os.path.exists(out + ".state")


def test_even8_vectorized_matches_brute():
    _init_even8(2, 1)
    ctx = ex._G["ctx"]
    dom = ex._G["dom"]
    qn = len(dom)
    ident = QPoly.identity(ctx)
    deltas = [d for d in range(1, ctx.N) if not ctx.in_subfield(d, "qn")]
    rng = np.random.default_rng(17)
    rows = [0, 3 * qn ** 3] + [int(r) for r in rng.integers(0, qn ** 4, 10)]
    for row in rows:
        delta = int(rng.choice(deltas))
        mul_d = ctx.vmul(delta, np.arange(ctx.N, dtype=np.int64))
        w = ctx.vadd(ex._G["ltab"][row], mul_d[dom])
        occ = np.bitwise_or.reduce(1 << ex._G["pos"][ex._G["norm"][w]])
        vec = bool(occ == ex._G["full"])
        coeffs = [int(dom[(row // qn ** (3 - i)) % qn]) for i in range(4)]
        Q = q_from_pair(QPoly(ctx, coeffs), ident, delta)
        assert vec == is_permutation_brute(Q)
    ex._G.clear()


def test_even8_preconditions():
    with pytest.raises(ValueError):
        verify_no_typeC_even_8dim({"q": 3})
    with pytest.raises(ValueError):
        verify_no_typeC_even_8dim({"q": 4})        # over the candidate budget


# -- dispatch and reports --------------------------------------------------------------------


def test_unknown_experiment():
    with pytest.raises(ValueError):
        run_experiment(ExperimentSpec("frobnicate"))


def test_run_experiment_writes_report(tmp_path):
    out = str(tmp_path / "hermite.json")
    rep = run_experiment(ExperimentSpec("hermite-coefficient", {"q": 2}, out=out))
    assert rep.verdict == "confirmed"
    with open(out) as fh:
        doc = json.load(fh)
    assert doc["name"] == "hermite-coefficient"
    assert doc["verdict"] == "confirmed"
    assert doc["candidates"] == 56
    assert os.path.exists(str(tmp_path / "hermite.csv"))


def test_report_write_csv_shape(tmp_path):
    rep = VerdictReport("demo", {"q": 3}, "counterexample",
                        {"a": 1}, 7, 0.25, {"zeta": 2})
    path = str(tmp_path / "demo.json")
    report_write(rep, path)
    with open(str(tmp_path / "demo.csv")) as fh:
        header, row = fh.read().strip().split("\n")
    assert header == "name,verdict,candidates,seconds,zeta,counterexample"
    assert row.startswith("demo,counterexample,7,0.250,2,")
    assert json.loads(row.split(",", 5)[5]) == {"a": 1}
    with open(path) as fh:
        doc = json.load(fh)
    assert doc["counterexample"] == {"a": 1}
