"""Smoke test for the chainfold extension module.

Build and install first:  maturin develop -m crates/py/Cargo.toml
"""

import json

import chainfold


def main():
    a2 = chainfold.RootDatum("A", 2, "adjoint")
    assert a2.rank == 2 and a2.weyl_order() == 6
    assert a2.longest_word() == [1, 2, 1]
    dom, word = a2.to_dominant([-1, 2])
    assert dom == [1, 1] and a2.act(word, [-1, 2]) == dom

    fan = chainfold.StackyFan(a2, [[0, 1], [1, 1], [1, 0]], [[0, 1], [1, 2]])
    assert fan.validate()["valid"]
    assert fan.is_stable([[1, 1], [0, 1]]) == {"stable": False, "reason": "order"}
    verdict = fan.is_stable([[1, 1], [1, 0]])
    assert verdict["stable"] and verdict["witness"]["ray_indices"] == [1, 2]
    assert len(fan.enumerate_stable()) == 6
    assert fan.orbit_poset()["counts_by_dim"] == [1, 3, 2]
    report = fan.report()
    assert report["kind"] == "deligne_mumford" and report["n_orbits"] == 6

    p2 = chainfold.StackyFan(
        chainfold.RootDatum("torus", 0, central_rank=2),
        [[1, 0], [0, 1], [-1, -1]],
        [[0, 1], [1, 2], [0, 2]],
    )
    assert p2.cox_data()["kernel_basis"] == [[1, 1, 1]]
    assert p2.dimensions()["stack_dim"] == 2

    done = chainfold.complete_cone(a2, [[1, 3]])
    assert done.is_polar() and done.w_support_convex()

    sc = chainfold.RootDatum("A", 1, "simply_connected")
    assert chainfold.vinberg_query(sc, [3], [1])["in_QG"] is False

    out, code = chainfold.run("group.define", json.dumps({"group": {"series": "G", "rank_of_type": 2, "isogeny": "adjoint"}}))
    assert code == 0 and json.loads(out)["weyl_order"] == 12
    assert chainfold.run("fan.validate", "")[1] == 2

    try:
        chainfold.RootDatum("G", 3)
    except ValueError as e:
        assert "rank_out_of_range" in str(e)
    else:
        raise AssertionError("G3 accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
