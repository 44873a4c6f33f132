"""Smoke test for the genset extension module. Run after installing crates/python."""

import json

import genset


def main():
    vectors, optimal = genset.exact_minimum(3, 2)
    assert optimal and len(vectors) == 6
    assert genset.is_good_set(3, vectors, 2)
    assert genset.is_good_set(3, vectors, 2, method="definition")
    assert not genset.is_good_set(3, ["100", "010", "001"], 2)

    units = ["100", "010", "001"]
    for method in ("matrices", "cosets", "hyperplanes"):
        assert genset.is_generic_set(3, units, 2, method=method)
        assert not genset.is_generic_set(3, units, 3, method=method)

    assert genset.threshold_n(4, 2) == 10
    good = genset.bounds_good(4, 2)
    assert good["G1.lower.doubling_recurrence"] == 9
    assert 19 < good["G1.upper.closed_form"] < 20
    rho = genset.bounds_stopping_redundancy(7, 4, 3)
    assert abs(rho["rho.upper.greedy_cover"] - 9.66) < 0.01

    h = genset.parity_check("hamming:3")
    assert len(h) == 3 and genset.stopping_distance(h) == 3
    redundant = genset.greedy_parity_check("hamming:3")
    assert genset.stopping_distance(redundant) == 3
    assert genset.peel(h, [0, 1]) == []
    assert genset.is_correctable(h, [0, 1])

    greedy = genset.greedy_set(5, 2, kind="generic")
    assert genset.is_generic_set(5, greedy, 2)

    try:
        genset.exact_minimum(7, 3)
    except RuntimeError as e:
        assert "budget" in str(e)
    else:
        raise AssertionError("expected a budget error")
    try:
        genset.is_good_set(3, ["10"], 1)
    except ValueError:
        pass
    else:
        raise AssertionError("expected a value error")

    code, out, _ = genset.run_cli(["search", "--kind", "good", "--r", "3", "--s", "2"])
    assert code == 0 and json.loads(out)["results"]["size"] == 6

    print("python smoke test ok")


if __name__ == "__main__":
    main()
