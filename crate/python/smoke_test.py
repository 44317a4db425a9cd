"""Smoke test for the Python extension.

Build and install it first:

    pip install maturin
    pip install -e crates/python --no-build-isolation
    python3 python/smoke_test.py
"""

import nilblock


def main():
    entries = {e["name"]: e for e in nilblock.catalog()}
    assert len(entries) == 20
    assert entries["remark14"]["order"] == 34992

    a5 = nilblock.Group.catalog("a5")
    assert a5.order == 60 and a5.degree == 5
    assert a5.derived_subgroup().order == 60
    assert a5.sylow_subgroup(2).order == 4
    assert not a5.is_p_solvable(2)

    s3 = nilblock.Group(3, ["(1,2,3)", "(1,2)"], name="s3")
    assert s3.contains("(2,3)")
    table = nilblock.CharacterTable(s3)
    assert table.degrees == [1, 1, 2]
    assert sum(d * d for d in table.degrees) == s3.order

    v = table.verdicts(2)[0]
    assert (v["m"], v["rhs"]) == (2, 2)
    assert v["cond_i"] and v["cond_iii"] and v["cond_iv"] and v["consistent"]

    report = nilblock.analyze(a5, 2)
    assert report["header"]["order"] == 60
    assert report["verdicts"][0]["m"] == 44
    assert report["star"][0]["orbit_count"] == 4

    s4 = nilblock.Group.catalog("s4")
    assert nilblock.surrogate(s4, 2)["holds"]

    try:
        nilblock.Group.catalog("nosuch")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown group accepted")

    r = nilblock.remark14()
    assert r["pprime_degree_square_sum"] == 1548
    assert r["sylow_abelianization_index"] == 27
    assert r["passed"]
    print("python smoke test passed")


if __name__ == "__main__":
    main()
