"""Acceptance checks, one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

import math
import random
import time

import numpy as np
import pytest

from fqrc.baselines import KNNClassifier
from fqrc.core import ClassDistribution, EvalParams, FeatureVector, LabeledSample, Symbol
from fqrc.data import load_bundled
from fqrc.evaluation import alpha_score
from fqrc.experiment import run
from fqrc.infer import classify_binary, distribution_from_memberships, membership_grid, normalize
from fqrc.learn import build_histogram, learn_cell, train
from fqrc.rank import interpret, symbol_string
from conftest import (
    EIGHT_CLASS_ROWS,
    EIGHT_CLASSES,
    WALKTHROUGH_MU,
    WALKTHROUGH_R,
    random_model,
)
from oracles import histogram_oracle, membership_oracle, tuple_oracle


def verdict(label, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
    assert ok, detail


def best_time(fn, repeat=20):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_walkthrough_inference():
    d = distribution_from_memberships(np.array(WALKTHROUGH_MU))
    worst = max(abs(got - want) for got, want in zip(d.r, WALKTHROUGH_R))
    elapsed = best_time(lambda: distribution_from_memberships(np.array(WALKTHROUGH_MU)))
    verdict(
        "1 walkthrough distribution",
        worst <= 5e-4 and elapsed < 1e-3,
        f"r={tuple(round(v, 4) for v in d.r)} max|err|={worst:.2e} time={elapsed * 1e3:.3f} ms",
    )


def test_ranking_tables():
    def work():
        ri = interpret(ClassDistribution(WALKTHROUGH_R))
        strings = [
            symbol_string(interpret(ClassDistribution.normalized(r)), EIGHT_CLASSES, unicode=True)
            for r, _ in EIGHT_CLASS_ROWS
        ]
        return ri, strings

    t0 = time.perf_counter()
    ri, strings = work()
    elapsed = time.perf_counter() - t0

    symbols = [e.symbol for e in ri.ranked[1:]]
    diffs = [e.r_diff for e in ri.ranked[1:]]
    four_ok = (
        ri.order == [0, 3, 1]
        and symbols == [Symbol.HIGHER, Symbol.HIGHER]
        and ri.excluded == {2}
        and abs(diffs[0] - 0.1386) <= 5e-4
        and abs(diffs[1] - 0.3911) <= 5e-4
    )
    expected = [p.replace("q×", "×") for _, p in EIGHT_CLASS_ROWS]
    mismatched = [(g, w) for g, w in zip(strings, expected) if g != w]
    verdict(
        "2 ranking tables",
        four_ok and not mismatched and elapsed < 10e-3,
        f"diffs={[round(v, 4) for v in diffs]} strings {7 - len(mismatched)}/7 "
        f"time={elapsed * 1e3:.2f} ms" + (f" mismatches={mismatched}" if mismatched else ""),
    )


def test_alpha_evaluation_semantics():
    rng = random.Random(3)
    failures = []
    for _ in range(2000):
        K = rng.randint(2, 8)
        Y = {k for k in range(K) if rng.random() < 0.4} or {rng.randrange(K)}
        W = {k for k in range(K) if rng.random() < 0.4}
        if not W | Y:
            continue
        fully_wrong = not (W & Y)
        at0 = alpha_score(W, Y, EvalParams(alpha=0.0))
        if at0 != (0.0 if fully_wrong else 1.0):
            failures.append(("alpha=0", W, Y, at0))
        scores = [alpha_score(W, Y, EvalParams(alpha=a)) for a in (0.25, 0.5, 1.0, 2.0, 4.0)]
        if fully_wrong and any(s != 0.0 for s in scores):
            failures.append(("fully wrong", W, Y, scores))
        if not fully_wrong and W != Y and any(b >= a for a, b in zip(scores, scores[1:])):
            failures.append(("monotone", W, Y, scores))
    partial = alpha_score({0}, {0, 1}, EvalParams(alpha=0.5))
    partial_ok = abs(partial - math.sqrt(0.5)) <= 1e-12
    verdict(
        "3 alpha-evaluation semantics",
        not failures and partial_ok,
        f"property violations={len(failures)} partial={partial!r}"
        + (f" first={failures[0]}" if failures else ""),
    )


def test_learning_oracle_equivalence():
    rng = random.Random(2024)
    mismatches = []
    t0 = time.perf_counter()
    for case in range(200):
        n = rng.randint(1, 20)
        bins = rng.randint(1, 10)
        kind = rng.random()
        if kind < 0.3:
            values = [float(rng.randint(-5, 5)) for _ in range(n)]
        elif kind < 0.4:
            values = [rng.uniform(-3, 3)] * n
        else:
            values = [rng.uniform(-100, 100) for _ in range(n)]
        edges, counts = histogram_oracle(values, bins)
        h = build_histogram(values, bins)
        t = learn_cell(values, bins)
        want = tuple_oracle(values, bins)
        got = (t.a, t.b, t.alpha, t.beta, t.lower, t.upper)
        if list(h.bin_edges) != edges or list(h.counts) != counts or got != want:
            mismatches.append((case, values, bins))
    elapsed = time.perf_counter() - t0
    verdict(
        "4 learning matches brute-force oracle",
        not mismatches and elapsed < 5.0,
        f"{200 - len(mismatches)}/200 exact time={elapsed:.3f} s"
        + (f" first={mismatches[0]}" if mismatches else ""),
    )


def test_learned_support_invariant():
    rng = np.random.default_rng(77)
    bad = []
    cells = 0
    for run_i in range(100):
        J, K = rng.integers(1, 5), rng.integers(1, 5)
        labels = list(range(K)) + list(rng.integers(0, K, size=rng.integers(0, 30)))
        scale = 10.0 ** rng.uniform(-6, 6)
        samples = [
            LabeledSample(FeatureVector(list(rng.normal(0, scale, size=J))), int(k))
            for k in labels
        ]
        m = train(samples, int(K), bins=int(rng.integers(1, 60)))
        for k in range(K):
            rows = [s.features.values for s in samples if s.label == k]
            for j in range(J):
                col = [r[j] for r in rows]
                cells += 1
                if m[j, k].support != (min(col), max(col)):
                    bad.append((run_i, j, k, m[j, k].support, (min(col), max(col))))
    verdict(
        "5 learned support equals training range",
        not bad,
        f"{cells - len(bad)}/{cells} cells exact" + (f" first={bad[0]}" if bad else ""),
    )


def test_distribution_invariants():
    rng = np.random.default_rng(99)
    pairs = 0
    sum_bad = mu_bad = argmax_bad = 0
    for _ in range(200):
        J, K = int(rng.integers(1, 6)), int(rng.integers(2, 9))
        model = random_model(rng, J, K)
        X = rng.uniform(-3, 4, size=(50, J))
        mu = membership_grid(model, X)
        mu_bad += int(np.sum((mu < 0) | (mu > 1)))
        P = np.prod(mu, axis=1)
        for i in range(len(X)):
            pairs += 1
            d = normalize(P[i])
            if d.is_all_zero:
                continue
            if abs(math.fsum(d.r) - 1.0) > 1e-9:
                sum_bad += 1
            c = float(10.0 ** rng.uniform(-3, 3))
            scaled = normalize(P[i] * c)
            if scaled.is_all_zero or classify_binary(scaled) != classify_binary(d):
                argmax_bad += 1
    verdict(
        "6 distribution invariants",
        pairs >= 10_000 and not (sum_bad or mu_bad or argmax_bad),
        f"pairs={pairs} sum violations={sum_bad} membership out of range={mu_bad} "
        f"argmax changes={argmax_bad}",
    )


def _separability_oracle(ds):
    """Each held-out row has full membership in its own class and zero in all others."""
    for i in range(len(ds)):
        rest = [s for n, s in enumerate(ds.samples) if n != i]
        m = train(rest, ds.n_classes, 50)
        x = ds.samples[i].features.values
        for k in range(ds.n_classes):
            mus = [membership_oracle(m[j, k].a, m[j, k].b, m[j, k].alpha, m[j, k].beta, x[j])
                   for j in range(ds.n_features)]
            own = k == ds.samples[i].label
            if own and any(v != 1 for v in mus):
                return False
            if not own and all(v > 0 for v in mus):
                return False
    return True


def test_bundled_leave_one_out():
    ds = load_bundled()
    oracle_separable = _separability_oracle(ds)
    t0 = time.perf_counter()
    result = run(ds, "loo", "fqrc", EvalParams(alpha=0.0))
    elapsed = time.perf_counter() - t0
    acc = result.report.accuracy
    verdict(
        "7 bundled leave-one-out on separable data",
        oracle_separable and acc == 1.0 and elapsed < 1.0,
        f"oracle separable={oracle_separable} accuracy={acc} n={len(ds)} "
        f"time={elapsed:.3f} s",
    )


def test_knn_determinism():
    rng = np.random.default_rng(5)
    centers = np.array([[0.0, 0.0], [1.5, 0.0], [0.0, 1.5]])
    samples = [
        LabeledSample(FeatureVector(list(centers[k] + rng.normal(0, 0.8, 2))), k)
        for k in range(3) for _ in range(30)
    ]
    query = rng.uniform(-2, 3, size=(300, 2))
    runs = [KNNClassifier(5).fit(samples).predict(query) for _ in range(5)]
    repeat_ok = all(r == runs[0] for r in runs)
    X = np.array([s.features.values for s in samples])
    self_labels = KNNClassifier(1).fit(samples).predict(X)
    wrong = sum(p != s.label for p, s in zip(self_labels, samples))
    verdict(
        "8 knn determinism",
        repeat_ok and wrong == 0,
        f"identical repeats={repeat_ok} k=1 self-query misses={wrong}/{len(samples)}",
    )


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
