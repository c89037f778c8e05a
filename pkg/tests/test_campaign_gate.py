from pathlib import Path

from asp_module_algebra import atoms, write_reports
from asp_module_algebra.reports import compare_models
from scripts.campaign_gate import main


def _write(path: Path, *reports):
    write_reports(path, reports)
    return path


def test_gate_passes_on_clean_campaign(tmp_path: Path, capsys):
    path = _write(tmp_path / "ok.jsonl", compare_models("module", [atoms("a")], [atoms("a")]))

    assert main([str(path), "--expect-trials", "1"]) == 0
    assert "Campaign gate passed (1 report(s), 1 applicable)." in capsys.readouterr().out


def test_gate_fails_on_failed_report(tmp_path: Path, capsys):
    path = _write(tmp_path / "bad.jsonl", compare_models("module", [atoms("a")], [atoms("b")]))

    assert main([str(path)]) == 1
    assert "FAIL module" in capsys.readouterr().out


def test_gate_fails_on_short_or_garbled_file(tmp_path: Path, capsys):
    path = _write(tmp_path / "short.jsonl", compare_models("module", [], []))
    with path.open("a", encoding="utf-8") as handle:
        handle.write("{broken\n")

    assert main([str(path), "--expect-trials", "5"]) == 1
    out = capsys.readouterr().out
    assert "1 line(s) could not be decoded" in out
    assert "only 1 trial(s) reported, expected 5" in out
