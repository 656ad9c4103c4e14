"""Command-line interface: outputs, exit codes, determinism."""

import json
import math

import pytest

from polyquad import cli


APPENDIX = '{"vertices": [[0,0],[2,1],[1,2]]}'
X2Y3 = "[[1,1,2,3]]"


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_appendix_example(capsys):
    code, out, _ = run(capsys, "appendix-example")
    assert code == 0
    assert "423/140" in out and "3.021" in out
    assert "54335/16384" in out and "3.316" in out
    assert "37295/12288" in out and "3.035" in out
    assert "31" in out and "21" in out


def test_appendix_example_json(capsys):
    code, out, _ = run(capsys, "appendix-example", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["integral"] == "423/140"
    assert data["trapezoid"] == "54335/16384"
    assert data["collected"] == "37295/12288"
    assert data["trapezoid_points"] == 31
    assert data["collected_points"] == 21
    assert data["pass"] is True


def test_integrate_collected(capsys):
    code, out, _ = run(capsys, "integrate", "--polygon", APPENDIX,
                       "--monomials", X2Y3, "--method", "collected", "--N", "2")
    assert code == 0
    assert "37295/12288" in out


def test_integrate_trapezoid(capsys):
    code, out, _ = run(capsys, "integrate", "--polygon", APPENDIX,
                       "--monomials", X2Y3, "--method", "trapezoid", "--N", "4")
    assert code == 0
    assert "54335/16384" in out


def test_integrate_zero_function(capsys):
    code, out, _ = run(capsys, "integrate", "--polygon", APPENDIX,
                       "--monomials", "[[0,1,0,0]]", "--N", "2")
    assert code == 0
    assert json.loads(run(capsys, "integrate", "--polygon", APPENDIX,
                          "--monomials", "[[0,1,0,0]]", "--N", "2",
                          "--format", "json")[1])["value"] == 0.0


def test_integrate_builtin_function(capsys):
    code, out, _ = run(capsys, "integrate", "--polygon", APPENDIX, "--function",
                       '{"builtin": "expxy"}', "--N", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["exact"] is None


def test_integrate_accelerated_suffix(capsys):
    code, out, _ = run(capsys, "integrate", "--polygon", APPENDIX,
                       "--monomials", X2Y3, "--method", "accelerated-2",
                       "--N", "2", "--format", "json")
    assert code == 0
    got = json.loads(out)["value"]
    assert got == pytest.approx(37295 / 12288, abs=1e-12)


def test_convergence_orders(capsys):
    code, out, _ = run(capsys, "convergence", "--polygon", APPENDIX,
                       "--monomials", X2Y3, "--method", "weighted",
                       "--N-list", "4,8,16,32", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "N,method,value,exact,abs_error,est_order"
    orders = [float(row.split(",")[-1]) for row in lines[2:]]
    assert all(abs(o - 2.0) < 0.3 for o in orders)


def test_pick_command(capsys):
    code, out, _ = run(capsys, "pick", "--polygon", APPENDIX, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert (data["I"], data["B"], data["area"], data["residual"]) \
        == (1, 3, "3/2", "0/1")


def test_pick_large_square(capsys):
    code, out, _ = run(capsys, "pick", "--polygon",
                       '{"vertices": [[0,0],[10,0],[10,10],[0,10]]}',
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert (data["I"], data["B"], data["area"]) == (81, 40, "100/1")


def test_lemma_sum_line(capsys):
    code, out, _ = run(capsys, "lemma-sum", "--spec",
                       '{"kind": "line", "dirs": [1,0,0,1], "h": 1}',
                       "--verify", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["value"] == pytest.approx(math.pi**2 / 3, abs=1e-12)
    assert data["difference"] < 1e-9


def test_lemma_sum_odd_is_zero(capsys):
    code, out, _ = run(capsys, "lemma-sum", "--spec",
                       '{"kind": "line", "dirs": [1,0,0,1], "h": 2}',
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["value"] == 0.0


def test_bernoulli_command(capsys):
    code, out, _ = run(capsys, "bernoulli", "--j", "4")
    assert code == 0
    assert "-1/720" in out


def test_exit_code_on_invalid_polygon(capsys):
    code, _, err = run(capsys, "integrate", "--polygon",
                       '{"vertices": [[0,0],[2,2],[2,0],[0,2]]}',
                       "--monomials", X2Y3, "--N", "2")
    assert code == 2
    assert "intersect" in err


def test_exit_code_on_bad_spec(capsys):
    code, _, err = run(capsys, "lemma-sum", "--spec",
                       '{"kind": "line", "dirs": [1,1,1,1], "h": 1}')
    assert code == 2
    assert "nonzero" in err


def test_exit_code_on_missing_function(capsys):
    code, _, err = run(capsys, "integrate", "--polygon", APPENDIX, "--N", "2")
    assert code == 2


def test_exit_code_on_contract_violation(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise cli.ContractViolation("forced")

    monkeypatch.setattr(cli, "integrate_polynomial_exact", broken)
    code, _, err = run(capsys, "integrate", "--polygon", APPENDIX,
                       "--monomials", X2Y3, "--N", "2")
    assert code == 3
    assert "forced" in err


def test_outputs_are_deterministic(capsys, tmp_path):
    outputs = []
    for _ in range(2):
        code, out, _ = run(capsys, "convergence", "--polygon", APPENDIX,
                           "--monomials", X2Y3, "--method", "accelerated-2",
                           "--N-list", "2,4,8", "--format", "json")
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
    # file output identical to stdout output
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "convergence", "--polygon", APPENDIX,
                       "--monomials", X2Y3, "--method", "accelerated-2",
                       "--N-list", "2,4,8", "--format", "json",
                       "--out", str(target))
    assert target.read_text() == outputs[0]


def test_thread_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("POLYQUAD_THREADS", "4")
    code, *_ = run(capsys, "bernoulli", "--j", "2")
    assert code == 0
    monkeypatch.setenv("POLYQUAD_THREADS", "zero")
    code, _, err = run(capsys, "bernoulli", "--j", "2")
    assert code == 2
    assert "POLYQUAD_THREADS" in err


def test_polygon_from_file(capsys, tmp_path):
    path = tmp_path / "poly.json"
    path.write_text(APPENDIX)
    code, out, _ = run(capsys, "pick", "--polygon", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["I"] == 1
