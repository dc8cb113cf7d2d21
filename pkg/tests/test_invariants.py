"""Cross-module invariants: every construction re-verifies, lifts stay
solution-free at scale, exact arithmetic never wraps."""

import json

from nosol.certificates import save_certificate
from nosol.cli import main as cli_main
from nosol.constructions import (
    PipelineConfig,
    coprime_power_digits,
    distinct_var_digits,
    geometric_digits,
    lift,
    double_progression_digits,
    shift_transfer,
    spaced_digits,
    three_coefficient_pipeline,
    two_var_digits,
    window_extract,
)
from nosol.equations import make_equation, make_symmetric
from nosol.oracle import SolutionQuery, find_nontrivial_solution, verify_certificate
from nosol.search import SearchConfig, max_digit_set


def all_construction_certificates():
    yield two_var_digits(1, 2)
    yield two_var_digits(5, 6)
    yield geometric_digits(2, 3)
    yield geometric_digits(3, 2)
    yield coprime_power_digits(3, 2, 3)
    yield spaced_digits([2, 17, 167], 8)
    yield double_progression_digits(5)
    yield double_progression_digits(11)
    yield distinct_var_digits(5)
    yield three_coefficient_pipeline(
        10, 11, 31, PipelineConfig(alpha=0.3, alpha2_small=0.03)).certificate
    yield shift_transfer(two_var_digits(1, 2), [1, 0], [0, 1])
    yield window_extract([1, 2, 5, 11], 24, make_equation([1, 1, -1, -1]))


def test_every_construction_reverifies():
    for cert in all_construction_certificates():
        assert cert.verified
        assert verify_certificate(cert), cert.meta


def test_certificate_roundtrip_always_verifies(tmp_path):
    for i, cert in enumerate(all_construction_certificates()):
        path = tmp_path / f"c{i}.json"
        save_certificate(cert, str(path))
        assert cli_main(["verify", "--cert", str(path)]) == 0


def test_lifted_sets_oracle_clean_at_scale(capsys):
    # 6-variable family at N <= 1e4
    lifted = lift(geometric_digits(2, 3), 10 ** 4)
    q = SolutionQuery(lifted.source.equation, lifted.elements)
    assert find_nontrivial_solution(q) is None
    # 4-variable family at N <= 1e5
    lifted = lift(two_var_digits(1, 2), 10 ** 5)
    assert lifted.size >= 316
    q = SolutionQuery(lifted.source.equation, lifted.elements)
    assert find_nontrivial_solution(q) is None


def test_huge_coefficients_stay_exact():
    big = 2 ** 80
    eq = make_symmetric([1, big])
    values = (0, 1, big, big + 1)
    q = SolutionQuery(eq, values)
    sol = find_nontrivial_solution(q)
    if sol is not None:
        assert sum(c * v for c, v in zip(eq.coeffs, sol.assignment)) == 0
    # the lift keeps exact counts far beyond 64-bit
    cert = two_var_digits(1, 2)
    assert lift(cert, 4 ** 40).size == 2 ** 40


def test_exact_mode_budget_flags_incomplete():
    eq = make_symmetric([10, 11, 31])
    res = max_digit_set(eq, 5201, SearchConfig(mode="exact", budget=100))
    assert not res.exhausted


def test_search_exit_best_effort(tmp_path, capsys):
    code = cli_main(["search", "--sym", "10,11,31", "--L", "5201",
                     "--budget", "600", "-o", str(tmp_path / "b.json")])
    capsys.readouterr()
    assert code == 3


def test_cli_verify_cert_in_distinct_mode(tmp_path, capsys):
    path = tmp_path / "dv.json"
    save_certificate(distinct_var_digits(5), str(path))
    assert cli_main(["verify", "--cert", str(path)]) == 0
    out = capsys.readouterr().out
    assert json.loads(out.strip().splitlines()[-1])["mode"] == "distinct"
