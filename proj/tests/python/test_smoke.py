"""Smoke tests for the python bindings; plain asserts, no test framework."""

import math
import sys

import bslab


def test_normal_forms():
    assert bslab.normal_form("tssT", 2, 3) == "s^3"
    assert bslab.normal_form("ts^2t^{-1}", 2, 3) == "s^3"
    assert bslab.normal_form("", 2, 3) == "1"
    assert bslab.normal_form("sssss t", 2, 3) == "s^2 t s^2"
    data = bslab.normal_form_data("sssss t", 2, 3)
    assert data == {"a0": 2, "syllables": [[1, 2]]}
    assert bslab.multiply("s", "S", 2, 3) == "1"
    assert bslab.invert("s^2 t", 2, 3) == "t^-1 s^-2"
    assert bslab.height("tsTt", 2, 3) == 1
    assert bslab.ball_size(1, 2, 3) == 5
    assert bslab.ball_size(2, 2, 3) == 17


def test_geometry():
    lam, c = bslab.alpha("s", 2, 3)
    assert (lam, c) == ("1", "1/3")
    lam, c = bslab.alpha("t", 2, 3)
    assert (lam, c) == ("3/2", "0")
    ee = math.exp(math.e) - math.e
    assert abs(bslab.compress(ee) - 1.0) < 1e-12
    assert abs(bslab.decompress(1.0) - ee) < 1e-10
    assert abs(bslab.stable_conj(1.0, 0.0, 3.5) - 3.5) < 1e-12
    assert abs(bslab.theta_ab(0, 0, 2, 3) - math.pi / 2) < 1e-12
    x0, x1 = bslab.tile_corners_std(1, 1, 2, 3)
    assert (x0, x1) == ("3/2", "3")
    c0, c1 = bslab.tile_corners_compressed(0, 0, 2, 3)
    assert c0 == 0.0 and 0 < c1 < 1


def test_sweeps():
    summary = bslab.find_n(0.1, 2, 3, a_max=2000, b_max=30)
    assert summary["status"] == "conclusive"
    assert summary["beyond_violations"] == 0
    report = bslab.nullity_sweep(3, 0.9, 2, 3, a_max=2000, b_max=30)
    assert report["violations"] == []
    assert report["fits"] + report["near"] == bslab.ball_size(3, 2, 3)
    slopes = bslab.asymptotic_slope("t", 3, 2, 2, 3, [2.0, 4.0, 8.0, 16.0])
    assert slopes["final_residual"] < 1e-3
    assert slopes["residuals"] == sorted(slopes["residuals"], reverse=True)


def test_classifier():
    assert bslab.gbs_classify((2, 3))["case"] == 3
    assert bslab.gbs_classify((1, 5))["case"] == 2
    assert bslab.gbs_classify((2, 2))["case"] == 1
    tree = bslab.gbs_classify("vertex x\nvertex y\nedge x y 2 3\n")
    assert tree["case"] == 1 and tree["caveats"] == []
    try:
        bslab.gbs_classify("vertex v\nedge v v 0 3\n")
    except bslab.ParseError:
        pass
    else:
        raise AssertionError("zero label must raise ParseError")


def test_svg():
    svg = bslab.render_tiling_svg("standard", 2, 3, -2, 2, -1, 3)
    assert svg.startswith("<?xml")
    assert "world-to-viewport" in svg
    assert svg.count("<polygon") == 25


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
