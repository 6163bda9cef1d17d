import json

import pytest

from cyclechain import cli
from cyclechain.chains import ChainSum, Element
from cyclechain.cycles import CycleSum
from cyclechain.parser import (
    Add,
    Atom,
    Mul,
    ParseError,
    canonical,
    parse,
    parse_element,
    parse_poly,
)
from cyclechain.poly import CubicPoly

from conftest import rand_element

C = CycleSum.single


class TestParse:
    def test_precedence(self):
        node = parse("C3 + C5*C2")
        assert node == Add((Atom("C", 3), Mul((Atom("C", 5), Atom("C", 2)))))

    def test_unit_square(self):
        assert parse_element("(C1+C2)^2") == Element.one()

    def test_zero_length_atom_rejected(self):
        with pytest.raises(ParseError):
            parse("L0")
        with pytest.raises(ParseError):
            parse("C0")

    def test_error_carries_offset(self):
        with pytest.raises(ParseError) as err:
            parse("C3 + @")
        assert err.value.pos == 5

    def test_one_is_the_unit(self):
        assert parse_element("1") == Element.one()
        assert parse_element("0") == Element.zero()

    def test_bare_integers_rejected(self):
        with pytest.raises(ParseError):
            parse("2")

    def test_oversized_length_rejected(self):
        with pytest.raises(ParseError):
            parse("C1000001")

    def test_exponent_must_be_positive(self):
        with pytest.raises(ParseError):
            parse("C2^0")

    def test_trailing_junk_rejected(self):
        with pytest.raises(ParseError):
            parse("C2 C3")

    def test_variable_only_when_allowed(self):
        with pytest.raises(ParseError):
            parse("x")
        parse("x", allow_var=True)

    def test_roundtrip_on_canonical_forms(self, rng):
        for _ in range(200):
            x = rand_element(rng)
            assert parse_element(canonical(x)) == x

    def test_print_order(self):
        x = Element(chains=ChainSum([5, 2]), cycles=CycleSum.from_lengths([10, 1]))
        assert canonical(x) == "C1 + C10 + L2 + L5"


class TestParsePoly:
    def test_worked_polynomial(self):
        p = parse_poly("C2*x^3 + (C1+C4)*x + C5")
        assert p == CubicPoly(
            a=C(2), b=CycleSum.zero(), c=CycleSum.from_lengths([1, 4]), d=C(5)
        )

    def test_high_powers_fold(self):
        assert parse_poly("x^5 + x^3") == CubicPoly(
            a=CycleSum.zero(),
            b=CycleSum.zero(),
            c=CycleSum.zero(),
            d=CycleSum.zero(),
        )

    def test_chains_rejected(self):
        with pytest.raises(ValueError):
            parse_poly("L2*x")


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestCli:
    def test_eval(self, capsys):
        code, out = run_cli(capsys, "eval", "C3 + C5*C2")
        assert code == 0 and out.strip() == "C3 + C10"

    def test_eval_json(self, capsys):
        code, out = run_cli(capsys, "eval", "C3 + L2", "--json")
        assert code == 0
        assert json.loads(out) == {"cycles": [3], "chains": [2]}

    def test_divide_solvable(self, capsys):
        code, out = run_cli(capsys, "divide", "C3", "C15")
        assert code == 0
        assert "minimal solution: C15" in out

    def test_divide_unsolvable_exit_code(self, capsys):
        code, out = run_cli(capsys, "divide", "C3 + C5", "C1")
        assert code == 1
        assert "no solution" in out

    def test_divide_json_schema(self, capsys):
        code, out = run_cli(capsys, "divide", "C3", "C15", "--json")
        payload = json.loads(out)
        assert payload["solvable"] is True
        assert payload["lambda0"] == [15]
        assert payload["upsilon0"] == [1, 3, 15]
        assert payload["tail_hi"] == [1, 3]
        assert payload["min_solution"] == {"cycles": [15], "chains": []}

    def test_divide_enumerate(self, capsys):
        code, out = run_cli(
            capsys, "divide", "C3", "C15", "--k", "15", "--n", "0",
            "--enumerate", "10", "--json",
        )
        payload = json.loads(out)
        assert sorted(payload["solutions"]) == sorted(
            [[15], [5], [1, 3, 5], [1, 3, 15]]
        )

    def test_divide_mixed(self, capsys):
        code, out = run_cli(
            capsys, "divide", "L1 + C2", "L1", "--k", "1", "--enumerate", "20",
            "--json",
        )
        payload = json.loads(out)
        assert code == 0 and payload["solvable"]
        assert {"cycles": [], "chains": [1]} in payload["solutions"]

    def test_divide_mixed_chain_bound(self, capsys):
        code, out = run_cli(
            capsys, "divide", "L3", "L1", "--k", "1", "--max-chain", "5",
            "--enumerate", "20", "--json",
        )
        payload = json.loads(out)
        assert code == 0
        sols = payload["solutions"]
        assert {"cycles": [], "chains": [1]} in sols
        assert {"cycles": [], "chains": [1, 3, 5]} in sols

    def test_divide_k_bound(self, capsys):
        code, _ = run_cli(capsys, "divide", "C3", "C3", "--k", str(3 * 10**6),
                          "--enumerate", "1")
        assert code == 2

    def test_annihilators(self, capsys):
        code, out = run_cli(capsys, "annihilators", "C3 + C5*C2", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["odd_bound"] == [1, 3, 5, 15]
        assert payload["closure_bound"] == [1, 3]

    def test_atoms_45(self, capsys):
        code, out = run_cli(capsys, "atoms", "45")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 12
        assert lines[0] == "T1 = C1 + C3 + C5 + C15"
        assert lines[-1] == "C45 = T45"

    def test_atoms_even_rejected(self, capsys):
        code, _ = run_cli(capsys, "atoms", "6")
        assert code == 2

    def test_classify(self, capsys):
        code, out = run_cli(capsys, "classify", "C1 + C2", "--json")
        payload = json.loads(out)
        assert payload["unit"] is True and payload["regular"] is True

    def test_green_true_false(self, capsys):
        code, out = run_cli(capsys, "green", "C1", "C2", "--rel", "Rtilde")
        assert code == 0 and out.strip() == "true"
        code, out = run_cli(capsys, "green", "C1", "C2", "--rel", "Rstar")
        assert code == 1 and out.strip() == "false"

    def test_ideal_meet(self, capsys):
        code, out = run_cli(capsys, "ideal-meet", "C2", "C2", "--json")
        assert code == 0
        assert json.loads(out) == {"kind": "principal", "generator": [2]}
        code, out = run_cli(capsys, "ideal-meet", "C3 + C2", "C5 + C2", "--json")
        assert code == 1
        assert json.loads(out) == {"kind": "unknown"}

    def test_poly_solve_bijective(self, capsys):
        code, out = run_cli(
            capsys, "poly-solve", "--poly", "x", "--target", "C7", "--json"
        )
        assert code == 0
        assert json.loads(out) == {"bijective": True, "solution": [7]}

    def test_poly_solve_degenerate(self, capsys):
        code, out = run_cli(
            capsys, "poly-solve", "--poly", "x^2", "--target", "C2", "--json"
        )
        payload = json.loads(out)
        assert code == 1 and payload["bijective"] is False
        assert payload["collision"] == [[], [2]]

    def test_oracle_product(self, capsys):
        code, out = run_cli(capsys, "oracle", "product", "C6", "C4", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["cycles"] == {"12": 2}
        assert payload["mod2"] == {"cycles": [], "chains": []}

    def test_oracle_check_divide(self, capsys):
        code, out = run_cli(
            capsys, "oracle", "check-divide", "C1", "C3", "--k", "3", "--json"
        )
        assert code == 0
        assert json.loads(out) == {"solutions": [{"cycles": [3], "chains": []}]}

    def test_parse_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["eval", "C0"])
        assert exc.value.code == 2

    def test_selftest_runs_clean(self, capsys):
        code, out = run_cli(capsys, "selftest", "--seed", "7")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines and all(line.startswith("PASS") for line in lines)

    def test_cycle_only_commands_reject_chains(self, capsys):
        for argv in (
            ["classify", "L1"],
            ["green", "L1", "C1", "--rel", "R"],
            ["annihilators", "L2 + C3"],
            ["poly-solve", "--poly", "x", "--target", "L1"],
        ):
            with pytest.raises(SystemExit) as exc:
                cli.main(argv)
            assert exc.value.code == 2
