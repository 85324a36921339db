"""Smoke test for the spl extension module."""

import json

import spl


def main():
    p = spl.Polynomial("(x-y)^2", ["x", "y"])
    assert str(p) == "x^2 - 2*x*y + y^2", str(p)
    assert p.degree == 2

    i3 = spl.CatalogIdeal("fermat_like:3")
    ideal = i3.ideal()
    assert len(ideal) == 6
    assert ideal.alpha() == 8
    assert ideal.hilbert_numerator() == "1 - 6t^8 + 4t^9 + t^12"
    assert ideal.multiplicity() == "42"
    assert len(i3.components()) == 7

    a3 = spl.CatalogIdeal("a3")
    assert [a3.alpha_symbolic(m)[0] for m in range(1, 5)] == [3, 6, 8, 10]
    sq = a3.symbolic_power(2)
    assert sq.alpha() == 6
    assert not sq.contains("x*y*z")

    holds, witness = spl.contains("sym:fermat_like:3:3", "pow:fermat_like:3:2")
    assert not holds and witness is not None

    sid = spl.Ideal.from_sid("ring x y z\ngen x^2-y*z\ngen x*y-z^2\n")
    assert sid.groebner_basis() == ["x*y - z^2", "x^2 - y*z", "y^2*z - x*z^2"]

    report = json.loads(spl.resolution_check(3))
    assert all(r["status"] != "failed" for r in report["results"])

    try:
        spl.CatalogIdeal("fermat_like:2")
    except ValueError:
        pass
    else:
        raise AssertionError("fermat_like:2 should be rejected")
    print("smoke test passed")


if __name__ == "__main__":
    main()
