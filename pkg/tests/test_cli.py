"""The command-line driver: exit codes and machine-readable output."""

import json

import pytest

from rectower.cli import main

CHI_23 = [-1, -3, 8, -1, 5, -7, -2, -9, 9, -9, 4, 0, 10, -7, -6, 8, -7, -2, 3,
          -10, 7, 8, 1]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_series_command(capsys):
    code, out = run(capsys, "series", "--n", "8")
    assert code == 0
    assert json.loads(out)["a"] == [1, 3, 15, 93, 639, 4653, 35169, 272835]


def test_series_plain(capsys):
    code, out = run(capsys, "series", "--n", "4", "--plain")
    assert code == 0 and out.strip() == "1, 3, 15, 93"


def test_chi_against_reference_row(capsys):
    code, out = run(capsys, "chi", "--p", "23", "--fixture", "new-tower")
    assert code == 0
    data = json.loads(out)
    assert data["chi"] == [c % 23 for c in CHI_23]
    assert data["series_bridge"] is True
    assert data["degree"] == 22


def test_graph_json(capsys):
    code, out = run(capsys, "graph", "--p", "5", "--fixture", "new-tower",
                    "--modulus", "2,-1,1")
    assert code == 0
    data = json.loads(out)
    sizes = sorted(c["size"] for c in data["components"] if c["class"] == "d-regular")
    assert sizes == [8]


def test_graph_dot(capsys):
    code, out = run(capsys, "graph", "--p", "5", "--dot")
    assert code == 0 and out.startswith("digraph")


def test_graph_ext_flag(capsys):
    code, out = run(capsys, "graph", "--p", "5", "--ext", "1")
    assert code == 0
    data = json.loads(out)
    assert data["r"] == 1 and data["modulus"] is None
    assert sum(c["size"] for c in data["components"]) == 6


def test_search_command(capsys):
    code, out = run(capsys, "search", "--p", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert [s["params"] for s in data["solutions"]] == [[1, 1, 0, 0, 3, 4]]


def test_feq_check_both_fixtures(capsys):
    code, out = run(capsys, "feq-check", "--p", "13")
    assert code == 0 and json.loads(out)["holds"] is True
    code, out = run(capsys, "feq-check", "--p", "13", "--fixture", "gs-tower")
    assert code == 0 and json.loads(out)["holds"] is True


def test_series_check_command(capsys):
    code, out = run(capsys, "series-check", "--order", "20", "--p", "5")
    assert code == 0
    data = json.loads(out)
    assert data["ode"] and data["li_trick"]


def test_genus_table(capsys):
    code, out = run(capsys, "genus", "--n-max", "5")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[3] == {"n": 4, "delta": 4, "genus": 9}


def test_genus_with_graph(capsys):
    code, out = run(capsys, "genus", "--n-max", "6", "--p", "5")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[5]["N_lower"] == 4 * 2 ** 6


def test_chi_invariants_small_primes(capsys):
    from rectower.ff import legendre

    for p in (5, 7, 11, 13, 17, 19, 23):
        code, out = run(capsys, "chi", "--p", str(p))
        assert code == 0
        data = json.loads(out)
        assert data["chi"][0] == legendre(-3, p) % p  # constant term
        assert data["series_bridge"] is True


def test_verify_command(capsys):
    for fixture, p in (("new-tower", "5"), ("gs-tower", "5"), ("type-a-toy", "5")):
        code, out = run(capsys, "verify", "--fixture", fixture, "--p", p)
        assert code == 0, out
        assert json.loads(out)["ok"] is True


def test_verify_exit_codes_across_primes(capsys):
    for fixture in ("new-tower", "gs-tower"):
        for p in ("7", "13"):
            code, out = run(capsys, "verify", "--fixture", fixture, "--p", p)
            assert code == 0, out


def test_conjugate_command(capsys):
    code, out = run(capsys, "conjugate", "--p", "7")
    assert code == 0 and json.loads(out)["ok"] is True


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        main(["chi"])  # missing --p
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["verify", "--fixture", "unknown", "--p", "5"])
    assert err.value.code == 2


def test_domain_error_exit_code(capsys):
    code = main(["chi", "--p", "4", "--fixture", "new-tower"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_bad_modulus_reports_usage_error(capsys):
    code = main(["graph", "--p", "5", "--modulus", "a^2-a+2"])
    assert code == 2


def test_output_is_deterministic(capsys):
    _, first = run(capsys, "chi", "--p", "7")
    _, second = run(capsys, "chi", "--p", "7")
    assert first == second
