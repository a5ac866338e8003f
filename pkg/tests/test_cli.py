"""Exit-code contract and byte determinism of the command line."""

import io
import json
import sys
from pathlib import Path

from shadecalc.cli import main

DATA = Path(__file__).resolve().parents[1] / "src" / "shadecalc" / "data"


def run(argv, capsys):
    buf = io.BytesIO()

    class Out:
        buffer = buf

    old = sys.stdout
    sys.stdout = Out()
    try:
        code = main(argv)
    finally:
        sys.stdout = old
    return code, buf.getvalue()


class TestExitCodes:
    def test_unknot_ok(self, capsys):
        code, out = run(
            ["invariants", "--curve", str(DATA / "unknot.json"), "--seed", "7", "--json"],
            capsys,
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["result"]["Cw"] == 0

    def test_singular_curve_exit_3(self, capsys):
        code, _ = run(["invariants", "--curve", str(DATA / "k0_minus.json")], capsys)
        assert code == 3

    def test_missing_file_exit_1(self, capsys):
        code, _ = run(["invariants", "--curve", "/nonexistent.json"], capsys)
        assert code == 1

    def test_malformed_flags_exit_1(self, capsys):
        code, _ = run(["sweep", "--family", "range", "--d", "0", "--grid=0:1:1"], capsys)
        assert code == 1

    def test_bad_grid_exit_1(self, capsys):
        code, _ = run(["sweep", "--family", "kae", "--epsilon", "1", "--grid=1:0:1"], capsys)
        assert code == 1

    def test_lp_line_shade_branch(self, capsys):
        code, out = run(
            ["invariants", "--curve", str(DATA / "lp_line.json"), "--seed", "3"], capsys
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["result"]["Cw"] is None
        assert obj["result"]["sh_part"] in ("1/2", "-1/2")
        assert obj["result"]["mode"] == "shade"


class TestDeterminism:
    def test_byte_identical_runs(self, capsys):
        argv = ["invariants", "--curve", str(DATA / "unknot.json"), "--seed", "11", "--json"]
        _, out1 = run(argv, capsys)
        _, out2 = run(argv, capsys)
        assert out1 == out2

    def test_sweep_deterministic(self, capsys):
        argv = ["sweep", "--family", "kae", "--epsilon", "-1", "--grid=-1:1:1/2", "--seed", "2"]
        c1, out1 = run(argv, capsys)
        c2, out2 = run(argv, capsys)
        assert c1 == c2 == 0 and out1 == out2


class TestCommands:
    def test_sweep_kae_payload(self, capsys):
        code, out = run(
            ["sweep", "--family", "kae", "--epsilon", "-1", "--grid=-1:1:1/4", "--seed", "2"],
            capsys,
        )
        assert code == 0
        obj = json.loads(out)
        jumps = obj["result"]["jumps"]
        assert len(jumps) == 1 and abs(int(jumps[0]["delta"])) == 2
        assert obj["result"]["singular"][4] is True

    def test_render(self, tmp_path, capsys):
        out_file = tmp_path / "unknot.svg"
        code, _ = run(
            ["render", "--curve", str(DATA / "unknot.json"), "--seed", "1", "--out", str(out_file)],
            capsys,
        )
        assert code == 0
        svg = out_file.read_text()
        assert svg.startswith("<?xml") and "</svg>" in svg

    def test_validate(self, capsys):
        code, out = run(["validate", "--curve", str(DATA / "trefoil.json")], capsys)
        assert code == 0
        obj = json.loads(out)
        assert obj["result"]["valid"] is True

    def test_invariants_with_svg(self, tmp_path, capsys):
        svg = tmp_path / "d.svg"
        code, out = run(
            [
                "invariants", "--curve", str(DATA / "kae_half_minus.json"),
                "--seed", "4", "--svg", str(svg),
            ],
            capsys,
        )
        assert code == 0
        assert svg.exists()
