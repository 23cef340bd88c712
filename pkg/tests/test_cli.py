"""Command-line interface: dispatch, output modes, exit codes."""

import json

import pytest

from ffcurve import bc, cli, tilting
from ffcurve.parser import parse_sheaf


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    payload = json.loads(out)
    assert payload["schema"] == cli.SCHEMA
    return payload


def test_chi_text(capsys):
    code, out, err = run(capsys, "chi", "O(2/3)")
    assert code == 0
    assert out.strip() == "(2, 3)"


def test_chi_json(capsys):
    payload = run_json(capsys, "chi", "O(2/3)", "--json")
    assert payload["command"] == "chi"
    assert payload["dim"] == 2 and payload["ht"] == 3


def test_hom_ext_values(capsys):
    code, out, _ = run(capsys, "hom", "O", "O(1)")
    assert code == 0 and out.strip() == "(1, 1)"
    code, out, _ = run(capsys, "ext1", "O(1)", "O")
    assert code == 0 and out.strip() == "(1, -1)"
    payload = run_json(capsys, "ext2", "O(5)", "T(inf,[2])", "--json")
    assert (payload["dim"], payload["ht"]) == (0, 0)


def test_k0(capsys):
    code, out, _ = run(capsys, "k0", "O(2/3)")
    assert code == 0
    assert out.strip() == "1*[O] + 2*[O(1)]"
    payload = run_json(capsys, "k0", "tilted(O(-1); 0)", "--json")
    assert (payload["a"], payload["b"]) == (-2, 1)


def test_breen_json_matches_library(capsys):
    payload = run_json(capsys, "breen", "--json")
    tables = bc.breen_tables()
    assert payload["labels"] == list(tables["labels"])
    for key in ("hom", "ext1", "ext2"):
        want = [[[v.dim, v.ht] for v in row] for row in tables[key]]
        assert payload[key] == want


def test_hn_json_vertices(capsys):
    payload = run_json(capsys, "hn", "O(1)+O(-1)", "--json")
    assert payload["vertices"] == [[0, 0], [1, 1], [2, 0]]
    assert [p["slope"] for p in payload["pieces"]] == ["1", "-1"]


def test_hn_torsion_first(capsys):
    payload = run_json(capsys, "hn", "T(inf,[2]) + O(1)", "--json")
    assert payload["vertices"] == [[0, 0], [0, 2], [1, 3]]
    assert payload["pieces"][0]["slope"] == "inf"


def test_hn_svg(tmp_path, capsys):
    target = tmp_path / "polygon.svg"
    code, out, _ = run(capsys, "hn", "O(1)+O(-1)", "--svg", str(target))
    assert code == 0
    body = target.read_text()
    assert body.startswith("<svg") and "polyline" in body


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "chi", "O(1")
    assert code == 2
    assert "parse error" in err


def test_slope_sign_violation_is_input_error(capsys):
    code, _, err = run(capsys, "info", "tilted(O(1); O)")
    assert code == 2 and err


def test_unknown_verb(capsys):
    code, _, err = run(capsys, "frobnicate", "O")
    assert code == 2


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "hn", "0")
    assert code == 1
    assert "error" in err


def test_untilt_requires_tilted(capsys):
    code, _, err = run(capsys, "untilt", "O(1)")
    assert code == 1


def test_tilt_rejects_tilted_input(capsys):
    code, _, err = run(capsys, "tilt", "tilted(0; O)")
    assert code == 1


def test_tilt_untilt_roundtrip(capsys):
    code, out, _ = run(capsys, "tilt", "O(-1) + O(2)")
    assert code == 0
    assert out.strip() == "tilted(O(-1); O(2))"
    code, out, _ = run(capsys, "untilt", out.strip())
    assert code == 0
    assert out.strip() == "O(2) + O(-1)"


def test_hnminus(capsys):
    payload = run_json(capsys, "hnminus", "tilted(O(-1); O(1) + T(inf,[2]))", "--json")
    assert [p["mu"] for p in payload["pieces"]] == ["1", "0", "-1"]
    assert payload["pieces"][0]["object"] == "O(-1)[1]"
    payload = run_json(capsys, "hnminus", "O", "--json")
    assert [p["mu"] for p in payload["pieces"]] == ["-inf"]


def test_bc_json(capsys):
    payload = run_json(capsys, "bc", "O(1/2)", "--json")
    assert payload["descriptor"]["dim"] == 1 and payload["descriptor"]["ht"] == 2
    want = bc.dim_ht(tilting.tilt(parse_sheaf("O(-2)")))
    payload = run_json(capsys, "bc", "O(-2)", "--json")
    assert (payload["descriptor"]["dim"], payload["descriptor"]["ht"]) == tuple(want)


def test_present(capsys):
    payload = run_json(capsys, "present", "O(3)", "--json")
    assert payload["valid"] is True
    assert payload["kernel_rank"] >= 0 and "O" in payload["middle"]
    code, out, _ = run(capsys, "present", "tilted(O(-1); 0)")
    assert code == 0 and "-> O(-1)[1] -> 0" in out


def test_koszul_json(capsys):
    payload = run_json(capsys, "koszul", "t", "t^2", "--json")
    assert payload["elements"] == ["t", "t^2"]
    assert payload["complex"]["ranks"] == [1, 2, 1]


def test_cohom(capsys):
    payload = run_json(capsys, "cohom", "t", "--json")
    assert payload["H"]["0"] == {"rank": 0, "torsion": []}
    assert payload["H"]["1"] == {"rank": 0, "torsion": ["t"]}
    code, out, _ = run(capsys, "cohom", "t")
    assert code == 0 and "H^1" in out


def test_eta(capsys):
    payload = run_json(capsys, "eta", "t", "t", "t + 1", "--json")
    assert payload["f"] == "t"
    assert payload["complex"]["ranks"] == [1, 2, 1]
    assert "cohomology" in payload


def test_eta_zero_scale(capsys):
    code, _, err = run(capsys, "eta", "0", "t")
    assert code == 1


def test_derham_json(capsys):
    payload = run_json(capsys, "derham", "1", "--trunc", "4", "--json")
    assert payload["n"] == 1 and payload["trunc"] == 4
    assert payload["ga"]["0"]["0"] == 1
    assert all(v == 1 for v in payload["ga"]["1"].values())
    assert payload["qp"]["table"]["0"] == {"0": 1}
    assert [1, 4] in payload["qp"]["boundary"]


def test_cocycle_q(capsys):
    payload = run_json(capsys, "cocycle", "3", "--json")
    assert payload["q"] == 3
    assert payload["cocycle_dim"] == 1 and payload["quotient_dim"] == 0
    assert len(payload["basis"]) == 1


def test_cocycle_report(capsys):
    payload = run_json(capsys, "cocycle", "--report", "--trunc", "4", "--json")
    assert payload["ok"] is True
    assert payload["poly_kernel"]["is_span_of_identity"] is True
    assert payload["poly_kernel"]["degree_bound"] == 4


def test_cocycle_argument_errors(capsys):
    code, _, err = run(capsys, "cocycle")
    assert code == 2
    code, _, err = run(capsys, "cocycle", "2", "--report")
    assert code == 2
    code, _, err = run(capsys, "cocycle", "0")
    assert code == 1


def test_info_sheaf_json(capsys):
    payload = run_json(capsys, "info", "O(1/2) + T(x0,[3])", "--json")
    assert payload["kind"] == "sheaf"
    assert payload["object"] == "O(1/2) + T(x0,[3])"
    assert payload["invariants"] == {"rank": 2, "degree": 4, "slope": "2"}
    assert payload["chi"] == [4, 2]
    assert len(payload["pieces"]) == 2
    F = parse_sheaf("O(1/2) + T(x0,[3])")
    want = bc.dim_ht(tilting.tilt(F))
    assert payload["bc"] == {"dim": want.dim, "ht": want.ht}


def test_info_tilted_json(capsys):
    payload = run_json(capsys, "info", "tilted(O(-1); O(1))", "--json")
    assert payload["kind"] == "tilted"
    assert payload["invariants"] == {"rank": 0, "degree": 2, "slope": "inf"}
    assert payload["tilted"] == {"deg_minus": 0, "rg_minus": 2, "mu_minus": "0"}
    assert [p["mu"] for p in payload["pieces"]] == ["1", "-1"]
    assert payload["bc"] == {"dim": 2, "ht": 0}


def test_info_zero_objects(capsys):
    payload = run_json(capsys, "info", "0", "--json")
    assert payload["invariants"]["slope"] is None and payload["pieces"] == []
    payload = run_json(capsys, "info", "tilted(0; 0)", "--json")
    assert payload["tilted"] is None and payload["pieces"] == []


def test_info_text(capsys):
    code, out, _ = run(capsys, "info", "O(2)")
    assert code == 0
    assert "rank: 1" in out and "slope: 2" in out


def test_svg_rejected_elsewhere(capsys):
    code, _, err = run(capsys, "chi", "O", "--svg", "x.svg")
    assert code == 2


def test_seed_accepted(capsys):
    code, _, _ = run(capsys, "breen", "--seed", "7")
    assert code == 0


def test_missing_argument(capsys):
    code, _, err = run(capsys, "chi")
    assert code == 2
