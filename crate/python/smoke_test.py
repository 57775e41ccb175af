"""Smoke test for the scf_tools extension.

Install first with `pip install -e crates/py --no-build-isolation`, then run
`python3 python/smoke_test.py`.
"""

import json

import scf_tools as scf


def main():
    v = scf.decide_circle([1, 2, 3, 4], m_max=10)
    assert v["outcome"] == "fails" and (v["m"], v["k"]) == (4, 3), v
    assert scf.verify_circle([1, 2, 3, 4], v["m"], v["k"], v["permutation"])
    assert scf.decide_circle([1, 1, 2], m_max=200) == {"outcome": "holds", "bound": 200}

    v = scf.decide_so3([2], q_max=5)
    assert (v["q"], v["p"], v["p_prime"]) == (5, 1, 2), v
    assert scf.verify_so3([2], 5, 1, 2)
    assert scf.decide_so3([1, 2], q_max=100)["outcome"] == "holds"
    assert len(scf.so3_search(4, 40)) == 11

    x = scf.TorusElement(["1/5", "0"], "so", 4)
    y = scf.TorusElement(["4/5", "0"], "so", 4)
    z = scf.TorusElement(["1/5", "1/5"], "so", 4)
    w = scf.TorusElement(["4/5", "1/5"], "so", 4)
    assert x.conjugate(y) and not z.conjugate(w)
    assert z.canonical_form()["chirality"] == "even"
    assert scf.TorusElement.from_json(x.to_json()).turns == x.turns
    assert x.orbit_size() == 4

    assert scf.fusion_elementwise(("so", 7), ("so", 8), 4)
    assert not scf.fusion_elementwise(("so", 4), ("so", 5), 3)

    case = scf.classify_pair("su-so-even", n=3)
    assert case["status"] == {"status": "scf-realizable"}, case
    assert case["connected_status"] == {"status": "not-scf", "reason": "outer-automorphism"}, case
    w = scf.so_sum_witness(1, 2, "1/7")
    assert w["verification"] == {"ambient_conjugate": True, "subgroup_conjugate": False}, w
    assert len(scf.catalog()) >= 10

    for bad in (lambda: scf.TorusElement(["1/0"], "u", 1), lambda: scf.decide_circle([0, 0])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print(json.dumps({"smoke": "ok", "so3_search_4": len(scf.so3_search(4, 40))}))


if __name__ == "__main__":
    main()
