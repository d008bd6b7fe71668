import csv
import json

import pytest

from groupevo.cli import main
from groupevo.community import write_groups_csv
from groupevo.pipeline import RunConfig, analysis_for, as_fraction, run, run_sweep
from groupevo.reports import read_events_csv
from groupevo.synthgen import lifetime_scenario, synthesize
from groupevo.tsn import write_interactions


@pytest.fixture(scope="module")
def synth_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("synth")
    assert main(["synth", "--preset", "lifetime", "-k", "4", "-o", str(d)]) == 0
    return d


def cfg_for(d, out, **kw):
    base = json.loads((d / "config.json").read_text())
    base.update(output=str(out), **kw)
    return RunConfig.from_dict(base)


def test_percent_thresholds():
    assert as_fraction(50) == 0.5 and as_fraction(0.7) == 0.7 and as_fraction(100) == 1.0
    c = RunConfig(alpha=60, beta=0.8, alphas=(50, 100))
    assert (c.alpha, c.beta, c.alphas) == (0.6, 0.8, (0.5, 1.0))


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig.from_dict({"nonsense": 1})
    with pytest.raises(ValueError):
        RunConfig(methods=("ged", "magic"))
    with pytest.raises(ValueError):
        RunConfig(methods=())


def test_run_recovers_truth_and_writes_outputs(synth_dir, tmp_path):
    res = run(cfg_for(synth_dir, tmp_path, methods=["ged", "asur", "palla"]))
    truth = read_events_csv(synth_dir / "truth-events.csv")
    assert {e.key() for e in res.events["ged"]} == {e.key() for e in truth}
    names = {p.name for p in res.outputs}
    assert {"events-ged.csv", "events-asur.json", "events-palla.csv", "chains-ged.dot",
            "anomalies-asur.json", "summary.csv", "diagnostics.json"} <= names
    with open(tmp_path / "summary.csv") as fh:
        assert [r["method"] for r in csv.DictReader(fh)] == ["ged", "asur", "palla"]


def test_repeat_runs_are_byte_identical(synth_dir, tmp_path):
    run(cfg_for(synth_dir, tmp_path / "a"))
    run(cfg_for(synth_dir, tmp_path / "b"))
    assert (tmp_path / "a/events-ged.csv").read_bytes() == (tmp_path / "b/events-ged.csv").read_bytes()


def test_sweep_has_36_rows(synth_dir, tmp_path):
    rows = run_sweep(cfg_for(synth_dir, tmp_path))
    assert len(rows) == 36
    assert {(r["alpha"], r["beta"]) for r in rows} == {(a / 10, b / 10) for a in range(5, 11)
                                                       for b in range(5, 11)}
    assert (tmp_path / "sweep.csv").exists()


def test_imported_groups_and_importance_sources(synth_dir, tmp_path):
    cfg = cfg_for(synth_dir, tmp_path)
    an = analysis_for(cfg)
    path = write_groups_csv(an.groups, tmp_path / "groups.csv")
    imported = run(cfg_for(synth_dir, tmp_path / "imp", groups_csv=str(path)), write=False)
    base = run(cfg, write=False)
    assert [e.key() for e in imported.events["ged"]] == [e.key() for e in base.events["ged"]]
    for source in ("uniform", "sp-global"):
        r = run(cfg_for(synth_dir, tmp_path, importance=source), write=False)
        assert r.events["ged"]
    imp = tmp_path / "imp.csv"
    with open(imp, "w") as fh:
        fh.write("timeframe,node,importance\n")
        for s in an.network:
            for n in sorted(s.nodes):
                fh.write(f"{s.index},{n},1.0\n")
    r = run(cfg_for(synth_dir, tmp_path, importance=str(imp)), write=False)
    u = run(cfg_for(synth_dir, tmp_path, importance="uniform"), write=False)
    assert [e.key() for e in r.events["ged"]] == [e.key() for e in u.events["ged"]]
    with pytest.raises(ValueError):
        run(cfg_for(synth_dir, tmp_path, importance="bogus"), write=False)


def test_foreign_groups_rejected(synth_dir, tmp_path):
    p = tmp_path / "g.csv"
    p.write_text("timeframe,group_id,member\n0,x,nobody\n0,x,ghost\n")
    with pytest.raises(ValueError, match="absent"):
        run(cfg_for(synth_dir, tmp_path, groups_csv=str(p)), write=False)


# --- command line ---------------------------------------------------------------

def test_cli_subcommands(synth_dir, tmp_path, capsys):
    conf = str(synth_dir / "config.json")
    out = str(tmp_path / "o")
    assert main(["ingest", "--config", conf, "-o", out]) == 0
    assert main(["groups", "--config", conf, "-o", out]) == 0
    assert main(["events", "--config", conf, "-o", out, "--methods", "ged,asur", "--alpha", "60"]) == 0
    assert main(["sweep", "--config", conf, "-o", out, "--alphas", "50,100", "--betas", "50"]) == 0
    assert main(["chains", "--config", conf, "-o", out]) == 0
    assert main(["compare", "--config", conf, "-o", out]) == 0
    printed = capsys.readouterr().out
    assert "forming" in printed and "ged|palla" in printed
    for name in ("snapshots.csv", "groups.csv", "events-ged.csv", "events-asur.csv",
                 "sweep.csv", "chains-ged.json", "compare.json"):
        assert (tmp_path / "o" / name).exists(), name
    with open(tmp_path / "o" / "sweep.csv") as fh:
        assert len(list(csv.DictReader(fh))) == 2


def test_cli_reports_errors(tmp_path, capsys):
    assert main(["events", str(tmp_path / "missing.csv")]) == 1
    assert "error" in capsys.readouterr().err
    empty = tmp_path / "empty.csv"
    write_interactions([], empty)
    assert main(["events", str(empty), "-o", str(tmp_path)]) == 1


def test_cli_synth_random_and_scenario_file(tmp_path):
    assert main(["synth", "--preset", "random", "--timeframes", "4", "--groups", "3",
                 "--noise", "0.1", "--seed", "5", "-o", str(tmp_path / "r")]) == 0
    assert main(["synth", str(tmp_path / "r" / "scenario.json"), "-o", str(tmp_path / "s")]) == 0
    assert (tmp_path / "r/interactions.csv").read_bytes() == (tmp_path / "s/interactions.csv").read_bytes()
