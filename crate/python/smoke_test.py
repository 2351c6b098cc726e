"""Quick end-to-end check of the pyknotquiver extension module."""

import json

import pyknotquiver as kq


def main():
    l4a1 = kq.Diagram.from_catalog("L4a1")
    assert l4a1.component_count == 2
    assert kq.Diagram.from_pd(l4a1.to_pd()) == l4a1

    core4 = kq.Biquandle.builtin("core:4")
    assert core4.check_axioms() == []
    assert kq.counting_invariant(l4a1, core4) == 16
    assert len(kq.colorings(l4a1, core4)) == 16

    phi = [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]
    assert kq.is_cocycle(core4, phi)
    assert kq.cocycle_invariant(l4a1, core4, phi) == "8q + 8"
    h2 = kq.second_cohomology(core4)
    assert h2["free_rank"] == 2

    swap3 = kq.Biquandle.from_tables([[1, 1, 2], [2, 2, 1], [3, 3, 3]])
    cochains = [[0, 1, 0, 1, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 1]]
    try:
        kq.DataVector(swap3, 3, cochains, [[2, 2, 1]])
        raise AssertionError("non-cocycles accepted")
    except ValueError:
        pass
    data = kq.DataVector(swap3, 3, cochains, [[2, 2, 1]], check=False)
    quiver = kq.build_representation(l4a1, data)
    four = quiver.four_polynomials()
    assert four["edge_char"] == "9t^3 - 13t^2 - 4t", four
    assert four["path_matrix"] == "24x^2z^3 + 24xz^3 + 39z^3", four
    assert four["maximal_paths"] == 5
    assert kq.Quiver.from_json(quiver.to_json()).isomorphic(quiver)

    config = json.dumps({
        "quandle": "z2bq", "group": "Z3",
        "cocycles": [[1, 0], [0, 1]], "endos": "all",
    })
    report = kq.batch(["2.1"], config)
    assert report["rows"][0]["ok"]["path_matrix"] == "64xyz^4", report
    job = kq.run_job(json.dumps({**json.loads(config), "link": "2.1", "mirror": True}))
    assert job["polynomials"]["edge_matrix"] == "8x^2y^2", job

    print("smoke test passed")


if __name__ == "__main__":
    main()
