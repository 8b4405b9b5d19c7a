import json
import math

import _luequiv as lq


def test_fixture_pt_spectrum():
    rho1 = lq.fixture("paper.rho1")
    vals = lq.pt_eigenvalues(rho1)
    expect = [-0.1, 0.3, 0.4, 0.4]
    assert all(abs(a - b) < 1e-10 for a, b in zip(vals, expect))


def test_operator_roundtrip():
    mat = [[1.0 + 0j, 0j], [0j, 0j]]
    op = lq.BipartiteOperator(1, 2, mat)
    assert op.dim_a == 1 and op.dim_b == 2
    assert op.matrix[0][0] == 1.0 + 0j


def test_decide_lu_inequivalent():
    rho = lq.fixture("paper.crlu.rho")
    sigma = lq.fixture("paper.crlu.sigma")
    verdict = json.loads(lq.decide_lu(rho, sigma))
    assert verdict["kind"] == "inequivalent"
    assert verdict["certificate"]["kind"] in ("SchmidtMismatch", "LocalSpectrumMismatch")


def test_decide_slu_triple():
    ps = [lq.fixture(f"paper.cex.P{i}") for i in (1, 2, 3)]
    qs = [lq.fixture(f"paper.cex.Q{i}") for i in (1, 2, 3)]
    verdict = json.loads(lq.decide_slu(ps, qs))
    assert verdict["kind"] == "inequivalent"
    assert verdict["certificate"]["kind"] == "CommutantObstruction"


def test_classify_npt():
    c = json.loads(lq.classify(lq.fixture("paper.rho1")))
    assert c["is_npt"] and not c["is_ppt"]
    assert abs(c["pt_min"] + 0.1) < 1e-9


def test_max_product_overlap_bell():
    s = 1 / math.sqrt(2)
    bell = [[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]]
    mat = [[complex(x) for x in row] for row in bell]
    op = lq.BipartiteOperator(2, 2, mat)
    assert abs(lq.max_product_overlap(op) - 0.5) < 1e-6


def test_witness_verification():
    sigma = lq.fixture("paper.tiles_upb_state")
    w = lq.verify_witness(sigma)
    assert w["status"] == "PositiveSemidefinite"
