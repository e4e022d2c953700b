"""Python smoke tests for the bflights extension module."""

import math
import sys

import bflights as bf


def check(cond, msg):
    if not cond:
        raise AssertionError(msg)


def test_generators():
    k1 = bf.koch(1)
    check(len(k1) == 5, "koch(1) should have 5 vertices")
    mid = k1.vertices()[2]
    check(abs(mid[0] - 0.5) < 1e-14, "koch peak x")
    check(abs(mid[1] - math.sqrt(3) / 6) < 1e-14, "koch peak y")

    walk = bf.saw(200, attempts=1000, seed=3)
    check(len(walk) == 201, "saw length")
    verts = [tuple(v) for v in walk.vertices()]
    check(len(set(verts)) == len(verts), "saw must be self-avoiding")
    again = [tuple(v) for v in bf.saw(200, attempts=1000, seed=3).vertices()]
    check(verts == again, "saw must be reproducible for a fixed seed")

    check(bf.line_reference(2).kind == "analytic-line2d", "line kind")
    check(bf.line_reference(3).kind == "analytic-plane3d", "plane kind")


def test_geometry():
    scene = bf.Scene(bf.line_reference(2))
    check(scene.distance([7.0, -3.0]) == 3.0, "line distance")
    check(scene.side([0.0, 1.0]) == "L", "line side left")
    check(scene.side([0.0, -1.0]) == "R", "line side right")

    koch_scene = bf.Scene(bf.koch(4))
    check(abs(koch_scene.diameter - 1.0) < 1e-12, "koch diameter")
    check(koch_scene.distance([0.0, 0.0]) == 0.0, "vertex distance is zero")


def test_dimension():
    boundary = bf.koch(6)
    counts = bf.box_count(boundary, bf.dyadic_ladder(1.0, 1, 9))
    est = bf.fit_dimension(counts)
    check(abs(est["d"] - math.log(4) / math.log(3)) < 0.08, f"koch dim {est['d']}")

    dec = bf.whitney_decompose(boundary, max_depth=11)
    check(dec.cube_count > 100, "whitney cube count")
    check(dec.level_count(2 ** -5) > 0, "level cubes exist")


def test_campaign():
    result = bf.campaign(bf.line_reference(2), engine="wos", eps=1.0, delta=0.01,
                         r_esc=1e4, seed=11, flights=30000, same_side=True)
    fit = result.fit("survival", 10.0, 1000.0)
    check(abs(fit["slope"] - (-1.0)) < 0.15, f"line survival slope {fit['slope']}")
    pred = bf.predict(1.0, 2)
    check(pred["survival_exponent"] == -1.0, "prediction survival exponent")
    check(abs(pred["beta"] - 2.0) < 1e-15, "prediction beta")

    again = bf.campaign(bf.line_reference(2), engine="wos", eps=1.0, delta=0.01,
                        r_esc=1e4, seed=11, flights=30000, same_side=True)
    check(result.survival["counts"] == again.survival["counts"],
          "campaign must be deterministic")

    saw_pred = bf.predict(4.0 / 3.0, 2)
    check(abs(saw_pred["alpha"] - 10.0 / 6.0) < 1e-14, "alpha formula")
    check(abs(saw_pred["beta"] - 7.0 / 3.0) < 1e-14, "beta formula")


def test_errors():
    try:
        bf.koch(11)
    except bf.BflightsError:
        pass
    else:
        raise AssertionError("koch(11) should raise")

    result = bf.campaign(bf.line_reference(2), eps=1.0, delta=0.01, r_esc=1e4,
                         seed=1, flights=2000)
    try:
        result.fit("survival", 1e8, 1e9)
    except bf.InsufficientDataError:
        pass
    else:
        raise AssertionError("empty window should raise InsufficientDataError")


def main():
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name}: ok")
    print("python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
