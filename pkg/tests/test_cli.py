import json

import pytest

from cosetmap.cli import main
from cosetmap.serialize import (cwmap_from_json, format_poly, parse_poly,
                                poly_from_json, poly_to_json)
from cosetmap import Poly, field


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_poly_text_round_trip():
    F3 = field(3)
    P = parse_poly("X^2+X+2", F3)
    assert P == Poly(F3, (2, 1, 1))
    assert parse_poly("X^3-X+1", F3) == Poly(F3, (1, 2, 0, 1))
    assert parse_poly(format_poly(P), F3) == P
    F27 = field(3, 3)
    w = F27.gen()
    P = Poly(F27, (w ** 6, F27.one(), w ** 9))
    assert parse_poly(format_poly(P), F27) == P
    with pytest.raises(ValueError):
        parse_poly("x^2 + y", F3)
    with pytest.raises(ValueError):
        parse_poly("", F3)


def test_gamma_command(capsys):
    code, out, _ = run_cli(capsys, "gamma", "--p", "3", "--poly", "X^2+X+2")
    assert code == 0
    assert out.strip() == "x1 x8"
    # (X-1)^2 = X^2 + X + 1 over GF(3)
    code, out, _ = run_cli(capsys, "--format", "json", "gamma", "--p", "3",
                           "--poly", "X^2+X+1")
    assert code == 0
    payload = json.loads(out)
    assert payload["gamma"] == [{"1": 3, "3": 2}, {"3": 3}]


def test_gamma_dpl_exit_codes(capsys):
    code, out, err = run_cli(capsys, "gamma-dpl", "--d", "1", "--p", "2", "--l", "2")
    assert code == 1
    assert out.strip() == ""
    code, out, _ = run_cli(capsys, "gamma-dpl", "--d", "2", "--p", "2", "--l", "2")
    assert code == 0
    assert out.splitlines() == ["x1 x3", "x1^4", "x2^2"]


def test_cycle_type_command(tmp_path, capsys):
    job = {"matrix": [[0, 1], [1, 2]], "shift": [0, 0]}
    path = tmp_path / "map.json"
    path.write_text(json.dumps(job))
    code, out, _ = run_cli(capsys, "cycle-type", "--p", "3", "--map", str(path))
    assert code == 0
    assert out.strip() == "x1 x8"


def test_cgl_factor_command(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[1, 0], [0, 1]]))
    code, out, _ = run_cli(capsys, "--format", "json", "cgl-factor", "--p", "2",
                           "--l", "2", "--matrix", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["factors"] == [[[0, 1], [1, 1]], [[1, 1], [1, 0]]]
    # infeasible: (1,2)
    path.write_text(json.dumps([[1]]))
    code, _, err = run_cli(capsys, "cgl-factor", "--p", "2", "--l", "2",
                           "--matrix", str(path))
    assert code == 1
    assert "infeasible" in err


def test_construct_command(tmp_path, capsys):
    job = {
        "p": 3, "d": 1, "t": 1,
        "g": [1, 2, 0],
        "gammas": [{"length": 3, "index": 1, "type": "x3"}],
        "seed": 0,
    }
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job))
    code, out, _ = run_cli(capsys, "--format", "json", "construct", "--job",
                           str(path), "--verify")
    assert code == 0
    payload = json.loads(out)
    assert payload["cycle_type"] == {"9": 1}
    assert payload["verified"]["is_complete"] is True
    f = cwmap_from_json(payload)
    from cosetmap import cw_cycle_type, ct
    assert cw_cycle_type(f) == ct("x9")


def test_sylow_command(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "sylow-type", "--q", "9",
                           "--type", "x1^3 x3^2", "--verify")
    assert code == 0
    payload = json.loads(out)
    assert payload["cycle_type"] == {"1": 3, "3": 2}
    assert payload["verified"]["is_complete"] is True
    # malformed type text
    code, _, err = run_cli(capsys, "sylow-type", "--q", "9", "--type", "x3 x1")
    assert code == 2
    # infeasible: even q
    code, _, err = run_cli(capsys, "sylow-type", "--q", "4", "--type", "x4")
    assert code == 1


def test_one_cycle_commands(capsys):
    code, out, _ = run_cli(capsys, "one-cycle", "--p", "3", "--k", "2", "--verify")
    assert code == 0
    assert "cycle type: x9" in out
    code, out, _ = run_cli(capsys, "one-cycle-poly", "--p", "3", "--k", "3",
                           "--modulus", "X^3-X+1", "--verify")
    assert code == 0
    assert out.splitlines()[0] == (
        "x^24 + x^22 + x^20 + w^16*x^18 + x^16 + x^14 + w^9*x^12 + w^9*x^10 "
        "+ x^8 + w^16*x^6 + w^9*x^4 + w^16*x^2 + x + w^6")


def test_verify_command(tmp_path, capsys):
    table = {"n": 3, "images": [1, 2, 0]}
    path = tmp_path / "t.json"
    path.write_text(json.dumps(table))
    code, out, _ = run_cli(capsys, "verify", "--table", str(path), "--p", "3",
                           "--dim", "1")
    assert code == 0
    assert "complete: True" in out
    assert "cycle type: x3" in out
    # malformed JSON
    path.write_text("{broken")
    code, _, err = run_cli(capsys, "verify", "--table", str(path), "--p", "3",
                           "--dim", "1")
    assert code == 2


def test_output_seed_stability(capsys):
    outs = set()
    for _ in range(2):
        code, out, _ = run_cli(capsys, "--format", "json", "sylow-type", "--q",
                               "27", "--type", "x1^3 x3^2 x9^2", "--seed", "5")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_json_poly_round_trip():
    F27 = field(3, 3)
    from cosetmap import one_cycle_polynomial
    P = one_cycle_polynomial(F27)
    assert poly_from_json(F27, poly_to_json(P)) == P


def test_json_field_encodings():
    from cosetmap.serialize import ctx_from_json, ctx_to_json, elem_to_json
    F27 = field(3, 3)
    assert ctx_to_json(F27) == {"p": 3, "k": 3, "modulus": [1, 2, 0, 1]}
    assert ctx_from_json(ctx_to_json(F27)) == F27
    # extension elements encode as their coordinate array
    assert elem_to_json(F27.gen() ** 6) == [1, 1, 1]
    # prime-field elements encode as bare residues
    F3 = field(3)
    assert elem_to_json(F3.elem(2)) == 2
    assert ctx_to_json(F3) == {"p": 3, "k": 1}


def test_cwmap_json_cosets_sorted():
    from cosetmap import one_cycle_map
    from cosetmap.serialize import cwmap_to_json
    payload = cwmap_to_json(one_cycle_map(3, 3))
    labels = [tuple(c["u"]) for c in payload["cosets"]]
    assert labels == sorted(labels)
