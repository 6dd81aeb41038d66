"""Cross-checks the frozen bundled report against an independent pipeline.

The reference pipeline below shares no code with the package beyond file
loading: combination is done over frozensets of labels by enumerating every
pair of subsets, belief and plausibility sum over the full powerset, the fold
order comes from a naive smallest-ready-node loop, and variances from numpy.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from _corpus import as_label_sets, powerset
from sotif_dst import load_scenario
from sotif_dst.cli import main
from sotif_dst.data import bundled_path

pytestmark = pytest.mark.golden

GOLDEN = Path(__file__).parent / "golden" / "sotif_lidar_report.json"
TOL = 1e-9


def naive_order(nodes, edges):
    remaining, order = set(nodes), []
    while remaining:
        ready = [n for n in remaining if not any(p in remaining and c == n for p, c in edges)]
        order.append(min(ready))
        remaining.remove(order[-1])
    return order


def yager_sets(t1, t2, theta):
    out, k = {}, 0.0
    for a in powerset(theta):
        for b in powerset(theta):
            p = t1.get(a, 0.0) * t2.get(b, 0.0)
            if p:
                if a & b:
                    out[a & b] = out.get(a & b, 0.0) + p
                else:
                    k += p
    out[theta] = out.get(theta, 0.0) + k
    return out


def fuse(config, assignment, order):
    theta = frozenset(config.frame.elements)
    acc = None
    for name in order:
        table = as_label_sets(config.sources[name].table[assignment[name]])
        acc = table if acc is None else yager_sets(acc, table, theta)
    return acc


def bel_pl(table, label, theta):
    bel = sum(v for a, v in table.items() if a <= {label})
    pl = sum(v for a, v in table.items() if label in a)
    return bel, pl


@pytest.fixture(scope="module")
def reference():
    config = load_scenario(bundled_path("sotif_lidar"))
    theta = frozenset(config.frame.elements)
    order = naive_order(config.sources, config.graph.edges)
    base = dict(config.assignment)
    fused = fuse(config, base, order)
    impact, variances = {}, {}
    for name, source in config.sources.items():
        sweeps = []
        for state in source.states:
            table = fuse(config, {**base, name: state}, order)
            sweeps.append([bel_pl(table, lbl, theta) for lbl in config.frame.elements])
        arr = np.array(sweeps)  # states x outcomes x (bel, pl)
        impact[name] = float((arr[:, :, 1] - arr[:, :, 0]).max())
        variances[name] = {lbl: (float(np.var(arr[:, i, 0])), float(np.var(arr[:, i, 1])))
                           for i, lbl in enumerate(config.frame.elements)}
    return config, order, fused, impact, variances


def test_golden_matches_current_output(tmp_path):
    out = tmp_path / "report.json"
    assert main(["report", "bundled:sotif_lidar", "--format", "json", "--out", str(out)]) == 0
    assert out.read_bytes() == GOLDEN.read_bytes()


def test_golden_agrees_with_reference_pipeline(reference):
    config, order, fused, impact, variances = reference
    golden = json.loads(GOLDEN.read_text())
    theta = frozenset(config.frame.elements)

    assert golden["order"] == order
    expected_masses = {("ANY" if a == theta else "+".join(sorted(a, key=config.frame.index))): v
                       for a, v in fused.items() if v > 0}
    assert golden["masses"].keys() == expected_masses.keys()
    for key, v in expected_masses.items():
        assert golden["masses"][key] == pytest.approx(v, abs=TOL)
    for lbl in config.frame.elements:
        bel, pl = bel_pl(fused, lbl, theta)
        iv = golden["intervals"][lbl]
        assert iv["belief"] == pytest.approx(bel, abs=TOL)
        assert iv["plausibility"] == pytest.approx(pl, abs=TOL)

    for entry in golden["impact"]:
        u = impact[entry["source"]]
        assert entry["max_u"] == pytest.approx(u, abs=TOL)
        expected = "High" if u >= 0.5 else "Moderate" if u >= 0.2 else "Low"
        assert entry["level"] == expected

    scores = {n: max(max(pair) for pair in v.values()) for n, v in variances.items()}
    assert [r["source"] for r in golden["ranking"]] == sorted(scores, key=lambda n: (-scores[n], n))
    for entry in golden["ranking"]:
        assert entry["score"] == pytest.approx(scores[entry["source"]], abs=TOL)
        for lbl, got in entry["outcomes"].items():
            vb, vp = variances[entry["source"]][lbl]
            assert got["var_bel"] == pytest.approx(vb, abs=TOL)
            assert got["var_pl"] == pytest.approx(vp, abs=TOL)
