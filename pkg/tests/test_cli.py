"""Command-line behaviour: exit codes, artifact sets, determinism."""

import csv
import io
import json

import pytest

from citemap import cli

from conftest import DOI, FIXTURE_DIR, SEED_TABLE

PIPELINE_FILES = {
    "corpus.csv",
    "resolution_log.csv",
    "graph.gexf",
    "web_data.json",
    "report.md",
}


def run(args, capsys):
    code = cli.main([str(a) for a in args])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def offline_args(out_dir, *extra):
    return [
        "--out-dir", out_dir,
        "--offline", "--fixtures", FIXTURE_DIR,
        "--max-depth", "1",
        *extra,
    ]


def run_pipeline(out_dir, capsys, *extra):
    return run(
        ["pipeline", "--input", SEED_TABLE, *offline_args(out_dir, *extra)], capsys
    )


def normalized_report(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    return "\n".join(line for line in lines if not line.startswith("_generated:"))


def normalized_log(path):
    rows = list(csv.reader(io.StringIO(path.read_text(encoding="utf-8"))))
    for row in rows[1:]:
        row[3] = ""
    return rows


class TestExitCodes:
    def test_success_returns_zero(self, tmp_path, capsys):
        code, out, err = run_pipeline(tmp_path / "out", capsys)
        assert code == 0, err

    def test_missing_input_file_returns_three(self, tmp_path, capsys):
        missing = tmp_path / "nowhere.csv"
        code, _, err = run(
            ["pipeline", "--input", missing, *offline_args(tmp_path / "out")], capsys
        )
        assert code == 3
        assert str(missing) in err

    def test_offline_without_fixtures_returns_two(self, tmp_path, capsys):
        code, _, err = run(
            [
                "pipeline", "--input", SEED_TABLE,
                "--out-dir", tmp_path / "out", "--offline",
            ],
            capsys,
        )
        assert code == 2
        assert "--fixtures" in err

    def test_unknown_flag_exits_two(self, tmp_path):
        with pytest.raises(SystemExit) as exc_info:
            cli.main(["pipeline", "--no-such-flag"])
        assert exc_info.value.code == 2

    def test_no_resolvable_seeds_returns_four(self, tmp_path, capsys):
        table = tmp_path / "seeds.csv"
        table.write_text(
            "title,doi,query\nSome title,not-a-doi,q\nOther,,q\n", encoding="utf-8"
        )
        code, _, err = run(
            ["pipeline", "--input", table, *offline_args(tmp_path / "out")], capsys
        )
        assert code == 4
        assert "seed" in err

    def test_empty_seed_table_returns_three(self, tmp_path, capsys):
        table = tmp_path / "seeds.csv"
        table.write_text("", encoding="utf-8")
        code, _, _ = run(
            ["pipeline", "--input", table, *offline_args(tmp_path / "out")], capsys
        )
        assert code == 3

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            cli.main(["--version"])
        assert exc_info.value.code == 0
        assert "citemap" in capsys.readouterr().out


class TestPipeline:
    def test_writes_exactly_the_artifact_set(self, tmp_path, capsys):
        out = tmp_path / "out"
        code, _, _ = run_pipeline(out, capsys)
        assert code == 0
        assert {p.name for p in out.iterdir()} == PIPELINE_FILES

    def test_row_errors_written_only_when_rows_fail(self, tmp_path, capsys):
        table = tmp_path / "seeds.csv"
        table.write_text(
            "title,doi,query\n"
            f"Good,{DOI['alpha']},q\n"
            ",10.5000/bravo,q\n",  # missing title
            encoding="utf-8",
        )
        out = tmp_path / "out"
        code, _, _ = run(
            ["pipeline", "--input", table, *offline_args(out)], capsys
        )
        assert code == 0
        assert {p.name for p in out.iterdir()} == PIPELINE_FILES | {"row_errors.csv"}
        rows = (out / "row_errors.csv").read_text(encoding="utf-8").splitlines()
        assert len(rows) == 2  # header + one rejected row

    def test_graph_counts_in_output(self, tmp_path, capsys):
        _, out_text, _ = run_pipeline(tmp_path / "out", capsys)
        assert "graph: 12 vertices, 15 edges" in out_text

    def test_two_runs_are_byte_identical(self, tmp_path, capsys):
        first, second = tmp_path / "a", tmp_path / "b"
        assert run_pipeline(first, capsys)[0] == 0
        assert run_pipeline(second, capsys)[0] == 0
        for name in ("corpus.csv", "graph.gexf", "web_data.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes(), name
        assert normalized_report(first / "report.md") == normalized_report(
            second / "report.md"
        )
        assert normalized_log(first / "resolution_log.csv") == normalized_log(
            second / "resolution_log.csv"
        )

    def test_filters_change_exported_graph(self, tmp_path, capsys):
        out = tmp_path / "out"
        code, out_text, _ = run_pipeline(
            out, capsys, "--min-degree", "2", "--largest-component"
        )
        assert code == 0
        assert "graph: 9 vertices, 13 edges" in out_text
        document = json.loads((out / "web_data.json").read_text(encoding="utf-8"))
        assert len(document["nodes"]) == 9
        assert len(document["edges"]) == 13

    def test_web_meta_carries_seed_accounting(self, tmp_path, capsys):
        out = tmp_path / "out"
        run_pipeline(out, capsys)
        meta = json.loads((out / "web_data.json").read_text(encoding="utf-8"))["meta"]
        assert meta["raw_result_count"] == 5
        assert meta["deduplicated_seed_count"] == 5
        assert meta["resolved_count"] == 5
        assert meta["unresolved_count"] == 0
        assert meta["max_depth"] == 1
        assert meta["retrieval_date"] == "2024-03-02"
        assert meta["community_algorithm"] == "louvain"
        assert meta["schema_version"] == 1


class TestStagedCommands:
    def stage_all(self, out, capsys):
        steps = [
            ["ingest", "--input", SEED_TABLE, "--out-dir", out],
            ["expand", *offline_args(out)],
            ["graph", "--out-dir", out],
            ["communities", "--out-dir", out, "--seed", "0"],
            ["rank", "--out-dir", out],
            ["export", "--out-dir", out],
            ["report", "--out-dir", out],
        ]
        for step in steps:
            code, _, err = run(step, capsys)
            assert code == 0, (step[0], err)

    def test_stage_artifacts(self, tmp_path, capsys):
        out = tmp_path / "out"
        self.stage_all(out, capsys)
        names = {p.name for p in out.iterdir()}
        assert PIPELINE_FILES <= names
        assert {
            "seeds.csv", "manifest.json", "communities.json",
            "rankings_authors.csv", "rankings_subjects.csv",
        } <= names

    def test_staged_matches_pipeline(self, tmp_path, capsys):
        staged, direct = tmp_path / "staged", tmp_path / "direct"
        self.stage_all(staged, capsys)
        assert run_pipeline(direct, capsys)[0] == 0
        for name in ("corpus.csv", "graph.gexf", "web_data.json"):
            assert (staged / name).read_bytes() == (direct / name).read_bytes(), name
        assert normalized_report(staged / "report.md") == normalized_report(
            direct / "report.md"
        )

    def test_ingest_writes_canonical_seeds(self, tmp_path, capsys):
        out = tmp_path / "out"
        code, _, _ = run(
            ["ingest", "--input", SEED_TABLE, "--out-dir", out], capsys
        )
        assert code == 0
        assert {p.name for p in out.iterdir()} == {"seeds.csv", "manifest.json"}
        text = (out / "seeds.csv").read_text(encoding="utf-8")
        assert '"10.5000/alpha"' in text  # prefix stripped, lowercased
        assert '"10.5000/delta"' in text  # trailing dot removed

    def test_report_recovers_from_pipeline_output(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert run_pipeline(out, capsys)[0] == 0
        before = normalized_report(out / "report.md")
        code, _, err = run(["report", "--out-dir", out], capsys)
        assert code == 0, err
        assert normalized_report(out / "report.md") == before

    def test_communities_prints_modularity(self, tmp_path, capsys):
        out = tmp_path / "out"
        for step in (
            ["ingest", "--input", SEED_TABLE, "--out-dir", out],
            ["expand", *offline_args(out)],
            ["graph", "--out-dir", out],
        ):
            assert run(step, capsys)[0] == 0
        code, out_text, _ = run(
            ["communities", "--out-dir", out, "--seed", "0"], capsys
        )
        assert code == 0
        assert "Q=" in out_text
        data = json.loads((out / "communities.json").read_text(encoding="utf-8"))
        assert set(data) >= {"algorithm", "algorithm_seed", "q_score", "membership"}
        assert data["algorithm"] == "louvain"
        assert len(data["membership"]) == 12

    def test_rank_outputs_author_table(self, tmp_path, capsys):
        out = tmp_path / "out"
        for step in (
            ["ingest", "--input", SEED_TABLE, "--out-dir", out],
            ["expand", *offline_args(out)],
        ):
            assert run(step, capsys)[0] == 0
        code, _, _ = run(["rank", "--out-dir", out], capsys)
        assert code == 0
        rows = list(
            csv.reader(
                io.StringIO(
                    (out / "rankings_authors.csv").read_text(encoding="utf-8")
                )
            )
        )
        assert rows[0] == ["rank", "author", "articles"]
        assert rows[1] == ["1", "Rin Sato", "4"]


class TestLabels:
    def test_export_applies_label_file(self, tmp_path, capsys):
        out = tmp_path / "out"
        TestStagedCommands().stage_all(out, capsys)
        labels = tmp_path / "labels.csv"
        labels.write_text(
            "community_id,label,color_hint\n0,projection core,#ff8800\n",
            encoding="utf-8",
        )
        code, _, err = run(
            ["export", "--out-dir", out, "--labels", labels], capsys
        )
        assert code == 0, err
        meta = json.loads((out / "web_data.json").read_text(encoding="utf-8"))["meta"]
        by_id = {item["community_id"]: item for item in meta["community_labels"]}
        assert by_id[0]["label"] == "projection core"
        assert by_id[0]["color_hint"] == "#ff8800"

    def test_unknown_community_id_returns_three(self, tmp_path, capsys):
        out = tmp_path / "out"
        TestStagedCommands().stage_all(out, capsys)
        labels = tmp_path / "labels.csv"
        labels.write_text("community_id,label\n99,ghost\n", encoding="utf-8")
        code, _, err = run(
            ["export", "--out-dir", out, "--labels", labels], capsys
        )
        assert code == 3
        assert "99" in err
