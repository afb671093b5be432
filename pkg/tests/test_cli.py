from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from pfam import cli

IDEAL = '{"dim":2,"gens":[[2,0],[1,1],[0,3]]}'
M = '{"dim":2,"gens":[[1,0],[0,1]]}'
MPOW = '[{"family":{"op":"ordinary_power","ideal":' + M + '}}]'


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_coverage_audit():
    ops = {
        "minimalize", "combine", "power", "integral_closure", "is_m_primary", "colength",
        "relative_colength", "count_below", "evaluate", "truncate", "verify_family_axioms",
        "linear_growth_constant", "staircase", "pbody", "minkowski_scale_sum", "covolume",
        "region_properties", "volume_below", "hilbert_kunz", "samuel", "mixed_dim2", "verma_rhs",
        "dim2_family_rhs", "e_vs_ehk_check", "length_sequence", "double_limit_table",
        "basis_search", "fit_homogeneous", "coefficient_limits",
    }
    assert set(cli.COVERAGE) == ops
    assert set(cli.COVERAGE.values()) <= set(cli.SUBCOMMANDS)
    required = {"length", "hk", "mult", "mixed", "verma", "closure", "truncate", "verify-family", "covol",
                "pbody", "limits", "double-limit", "basis", "fit", "coeff-limits"}
    assert required <= set(cli.SUBCOMMANDS)
    assert set(cli.SUBCOMMANDS) == set(cli._HANDLERS)


def test_hk():
    code, out, _ = run("hk", "--ideal", IDEAL)
    assert code == 0
    assert json.loads(out)["hilbert_kunz"]["exact"] == "4/1"


def test_length_and_relative():
    assert json.loads(run("length", "-p", "2", "--ideal", IDEAL)[1])["length"] == 4
    code, out, _ = run("length", "--J", M, "--K", IDEAL)
    assert json.loads(out)["length"] == 3


def test_parse_errors():
    assert run("length", "--ideal", '{"gens":[[2,0]]}')[0] == 2
    assert run("length", "--ideal", "{not json")[0] == 2
    assert run("nosuch")[0] == 2
    assert run("length", "--emax", "13", "--ideal", IDEAL)[0] == 2


def test_non_prime():
    code, _, err = run("length", "-p", "4", "--ideal", IDEAL)
    assert code == 3 and "not prime" in err


def test_dimension_mismatch():
    code, _, _ = run("mixed", "--ideal", IDEAL, "--other", '{"dim":3,"gens":[[1,0,0],[0,1,0],[0,0,1]]}')
    assert code == 4
    assert run("hk", "--ideal", '{"dim":2,"gens":[[1,0,0]]}')[0] == 4


def test_other_errors_exit_5():
    code, _, err = run("hk", "--ideal", '{"dim":2,"gens":[[1,1]]}')
    assert code == 5 and "m-primary" in err


def test_double_limit_pass():
    code, out, _ = run("double-limit", "--I", MPOW, "--bmax", "6", "--emax", "8")
    assert code == 0
    assert json.loads(out)["verdict"] == "PASS"


def test_fit_residual_exit_1():
    samples = '[{"point":[1,0],"value":1},{"point":[0,1],"value":6},{"point":[1,1],"value":8},{"point":[2,1],"value":14}]'
    code, out, _ = run("fit", "--d", "2", "--samples", samples)
    assert code == 1
    res = json.loads(out)["fit"]["residuals"][0]
    assert res["residual"]["exact"] == "2/1"


def test_csv_output():
    code, out, _ = run("limits", "--I", MPOW, "--emax", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == [
        "b,e,q,num,den,float",
        "live,0,1,1,1,1",
        "live,1,2,3,4,0.75",
        "live,2,4,5,8,0.625",
    ]


def test_file_input_and_out(tmp_path):
    src = tmp_path / "ideal.json"
    src.write_text(IDEAL)
    dest = tmp_path / "out.json"
    code, out, _ = run("mult", "--ideal", f"@{src}", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["samuel"] == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["ideal", "--ideal", IDEAL, "--op", "product", "--other", M],
        ["ideal", "--ideal", M, "--op", "power", "--n", "4", "--mode", "frobenius"],
        ["ideal", "--ideal", IDEAL, "--op", "is_m_primary"],
        ["closure", "--ideal", '{"dim":2,"gens":[[2,0],[0,2]]}'],
        ["count-below", "--ideal", M, "--halfspace", '{"normal":[1,1],"bound":3}'],
        ["eval", "--family", '{"op":"closed_power","ideal":' + IDEAL + "}", "--e", "2"],
        ["truncate", "--family", '{"op":"ordinary_power","ideal":' + M + "}", "--a", "1"],
        ["verify-family", "--family", '{"op":"ordinary_power","ideal":' + M + "}"],
        ["growth", "--I", MPOW],
        ["covol", "--ideal", IDEAL, "--newton"],
        ["pbody", "--family", '{"op":"ordinary_power","ideal":' + M + "}", "--qmax", "8"],
        ["minkowski", "--parts", '[{"region":{"kind":"convex","dim":2,"vertices":[[0,1],[1,0]]},"scale":2},'
         '{"region":{"kind":"convex","dim":2,"vertices":[[0,3],[2,0]]},"scale":1}]'],
        ["props", "--region", '{"kind":"staircase","dim":2,"apexes":[["1/2",0],[0,1]]}'],
        ["vol-below", "--region", '{"kind":"staircase","dim":2,"apexes":[[1,0],[0,1]]}',
         "--halfspace", '{"normal":[1,1],"bound":2}'],
        ["mixed", "--ideal", M, "--other", '{"dim":2,"gens":[[2,0],[1,2],[0,3]]}'],
        ["verma", "--ideals", "[" + M + ',{"dim":2,"gens":[[2,0],[1,2],[0,3]]}]', "--rs", "[1,1]"],
        ["dim2-rhs", "--families", '[{"op":"closed_power","ideal":' + M + "}]", "--shifts", "[0]"],
        ["e-vs-ehk", "--family", '{"op":"ordinary_power","ideal":' + IDEAL + "}"],
        ["basis", "--s", "2", "--d", "2"],
        ["coeff-limits", "--families", '[{"op":"ordinary_power","ideal":' + M + "}]", "--d", "2", "--elive", "3"],
        ["limits", "--J", '[{"family":{"op":"frobenius","ideal":{"dim":2,"gens":[[1,0]]}}}]',
         "--I", '[{"family":{"op":"frobenius","ideal":' + M + '},"shift":1}]', "--base", "1"],
        ["eval", "--family", '{"op":"shifted_product","base_b":null,"factors":[{"family":{"op":"table",'
         '"entries":[' + M + "]},\"shift\":0}]}"],
    ],
)
def test_every_subcommand_succeeds(argv):
    code, out, err = run(*argv)
    assert code == 0, err
    json.loads(out)


def test_deterministic_output():
    argv = ["double-limit", "--I", MPOW, "--bmax", "3", "--emax", "4"]
    assert run(*argv)[1] == run(*argv)[1]


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pfam.cli", "basis", "--s", "2", "--d", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["det"] == -1
