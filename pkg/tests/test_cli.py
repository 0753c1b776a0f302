import pytest
from typer.testing import CliRunner

from src.cli.commands import EXIT_TASK_FAILURE, EXIT_USAGE, app
from src.cli.config import SearchConfig
from src.cli.search_runner import run_search
from src.embedding.embedding_core import reflect
from src.formats.graph_io import read_catalog, write_catalog, write_surftri_line
from src.generation.triangulation_gen import generate
from src.graph.named_graphs import icosahedron
from src.search.genus_search import embed_in_genus

runner = CliRunner()


@pytest.fixture
def catalog8(tmp_path):
    path = tmp_path / "order8.txt"
    write_catalog(path, generate(8).embeddings)
    return path


def search_args(catalog, run_dir, *extra):
    return ["search", "--in", str(catalog), "--no-filters", "--genus", "0",
            "--checkpoint", str(run_dir / "run.checkpoint"),
            "--witnesses", str(run_dir / "run.witnesses"),
            "--report", str(run_dir / "run.report"), *extra]


def outputs(run_dir):
    return (run_dir / "run.report").read_text(), (run_dir / "run.witnesses").read_text()


def test_gen_writes_catalog(tmp_path):
    out = tmp_path / "six.txt"
    result = runner.invoke(app, ["gen", "--order", "6", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert len(read_catalog(out)) == 2


def test_gen_planar_code(tmp_path):
    out = tmp_path / "seven.pc"
    result = runner.invoke(app, ["gen", "--order", "7", "--out", str(out), "--format", "planar_code"])
    assert result.exit_code == 0, result.output
    assert out.read_bytes().startswith(b">>planar_code<<")
    assert len(read_catalog(out)) == 5


def test_gen_rejects_bad_order(tmp_path):
    result = runner.invoke(app, ["gen", "--order", "20", "--out", str(tmp_path / "x")])
    assert result.exit_code == EXIT_USAGE


def test_fixtures_then_filter(tmp_path):
    near_misses = tmp_path / "near_misses.txt"
    assert runner.invoke(app, ["fixtures", "--out", str(near_misses)]).exit_code == 0
    survivors = tmp_path / "survivors.txt"
    report = tmp_path / "filter.report"
    result = runner.invoke(app, ["filter", "--in", str(near_misses), "--out", str(survivors), "--report", str(report)])
    assert result.exit_code == 0, result.output
    lines = report.read_text().splitlines()
    assert lines[0].startswith("0\tsurvivor\t")
    assert lines[1].startswith("1\tsurvivor\t")
    assert lines[2:] == ["# input\t2", "# maxDegree\t2", "# deg8Independence\t2"]
    assert len(read_catalog(survivors)) == 2


def test_filter_all_rejects_icosahedron(tmp_path):
    catalog = tmp_path / "icosahedron.txt"
    write_catalog(catalog, [embed_in_genus(icosahedron(), 0).embedding])
    survivors = tmp_path / "survivors.txt"
    report = tmp_path / "filter.report"
    result = runner.invoke(app, ["filter", "--in", str(catalog), "--out", str(survivors), "--report", str(report),
                                 "--filters", "all"])
    assert result.exit_code == 0, result.output
    lines = report.read_text().splitlines()
    assert lines[0] == "0\trejected\tmaxDegree=pass,deg8Independence=pass,forbiddenDegreeSequence=fail"
    assert lines[1:5] == ["# input\t1", "# maxDegree\t1", "# deg8Independence\t1", "# forbiddenDegreeSequence\t0"]
    assert read_catalog(survivors) == []


def test_filter_empty_catalog(tmp_path):
    catalog = tmp_path / "empty.txt"
    catalog.write_text("")
    survivors = tmp_path / "survivors.txt"
    report = tmp_path / "filter.report"
    result = runner.invoke(app, ["filter", "--in", str(catalog), "--out", str(survivors), "--report", str(report)])
    assert result.exit_code == 0, result.output
    assert report.read_text().splitlines() == ["# input\t0", "# maxDegree\t0", "# deg8Independence\t0"]
    assert survivors.read_text() == ""


def test_filter_rejects_non_ascii_catalog(tmp_path):
    catalog = tmp_path / "bad.txt"
    catalog.write_bytes("4 bcd,adc,abd,acb \u00e9\n".encode("latin-1"))
    result = runner.invoke(app, ["filter", "--in", str(catalog), "--out", str(tmp_path / "o"),
                                 "--report", str(tmp_path / "r")])
    assert result.exit_code == EXIT_USAGE
    assert "0xe9" in result.output


def test_filter_rejects_other_orders(tmp_path, catalog8):
    result = runner.invoke(app, ["filter", "--in", str(catalog8), "--out", str(tmp_path / "o"),
                                 "--report", str(tmp_path / "r")])
    assert result.exit_code == EXIT_USAGE


def test_search_needs_no_filters_off_order_12(tmp_path, catalog8):
    args = search_args(catalog8, tmp_path)
    args.remove("--no-filters")
    result = runner.invoke(app, args)
    assert result.exit_code == EXIT_USAGE


def test_search_report(tmp_path, catalog8):
    result = runner.invoke(app, search_args(catalog8, tmp_path))
    assert result.exit_code == 0, result.output
    report = (tmp_path / "run.report").read_text().splitlines()
    assert report[0] == "input\t14"
    assert "tasks\t14" in report
    assert "completed\t14" in report
    assert "failed\t0" in report


# Worker count changes neither the report nor the witness file
def test_search_is_deterministic_across_workers(tmp_path, catalog8):
    one, two = tmp_path / "one", tmp_path / "two"
    one.mkdir()
    two.mkdir()
    assert runner.invoke(app, search_args(catalog8, one, "--workers", "1")).exit_code == 0
    assert runner.invoke(app, search_args(catalog8, two, "--workers", "2")).exit_code == 0
    assert outputs(one) == outputs(two)


def test_interrupted_search_resumes_to_same_result(tmp_path, catalog8):
    full, part = tmp_path / "full", tmp_path / "part"
    full.mkdir()
    part.mkdir()
    assert runner.invoke(app, search_args(catalog8, full)).exit_code == 0
    result = runner.invoke(app, search_args(catalog8, part, "--stop-after", "5"))
    assert result.exit_code == 0, result.output
    assert "completed\t5" in (part / "run.report").read_text().splitlines()
    result = runner.invoke(app, ["resume", "--checkpoint", str(part / "run.checkpoint")])
    assert result.exit_code == 0, result.output
    assert outputs(part) == outputs(full)

    before = (part / "run.checkpoint").read_text()
    assert runner.invoke(app, ["resume", "--checkpoint", str(part / "run.checkpoint")]).exit_code == 0
    assert (part / "run.checkpoint").read_text() == before
    assert outputs(part) == outputs(full)


@pytest.mark.parametrize("option", ["--workers", "--block-size"])
def test_search_rejects_zero_counts(tmp_path, catalog8, option):
    result = runner.invoke(app, search_args(catalog8, tmp_path, option, "0"))
    assert result.exit_code == EXIT_USAGE
    assert not (tmp_path / "run.report").exists()


def test_gen_rejects_zero_workers(tmp_path):
    result = runner.invoke(app, ["gen", "--order", "6", "--out", str(tmp_path / "x"), "--workers", "0"])
    assert result.exit_code == EXIT_USAGE


def test_removal_search_blocks(tmp_path):
    catalog = tmp_path / "order7.txt"
    write_catalog(catalog, generate(7).embeddings)
    result = runner.invoke(app, search_args(catalog, tmp_path, "--remove-edges", "1", "--block-size", "2"))
    assert result.exit_code == 0, result.output
    assert "tasks\t15" in (tmp_path / "run.report").read_text().splitlines()


def test_resume_rejects_corrupt_checkpoint(tmp_path):
    path = tmp_path / "run.checkpoint"
    path.write_text("garbage\n")
    result = runner.invoke(app, ["resume", "--checkpoint", str(path)])
    assert result.exit_code == EXIT_USAGE


def test_resume_rejects_changed_input(tmp_path, catalog8):
    assert runner.invoke(app, search_args(catalog8, tmp_path, "--stop-after", "2")).exit_code == 0
    write_catalog(catalog8, generate(8).embeddings[:3])
    result = runner.invoke(app, ["resume", "--checkpoint", str(tmp_path / "run.checkpoint")])
    assert result.exit_code == EXIT_USAGE


def test_failed_blocks_give_exit_code_one(tmp_path, catalog8, monkeypatch):
    def broken(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr("src.cli.search_runner.embed_with_removals", broken)
    result = runner.invoke(app, search_args(catalog8, tmp_path, "--workers", "1"))
    assert result.exit_code == EXIT_TASK_FAILURE
    assert "failed\t14" in (tmp_path / "run.report").read_text().splitlines()


def test_dedupe_merges_mirror_images(tmp_path, k4):
    witnesses = tmp_path / "w"
    witnesses.write_text(f"0\t0\t-\t{write_surftri_line(k4)}\n1\t0\t-\t{write_surftri_line(reflect(k4))}\n")
    out = tmp_path / "unique"
    result = runner.invoke(app, ["dedupe", "--in", str(witnesses), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_text().splitlines() == [f"0\t0\t-\t{write_surftri_line(k4)}"]


def test_dedupe_reports_bad_record(tmp_path, k4):
    witnesses = tmp_path / "w"
    witnesses.write_text(f"0\t0\t-\t{write_surftri_line(k4)}\n1\t0\t-\t4 bcd,adc\n")
    result = runner.invoke(app, ["dedupe", "--in", str(witnesses), "--out", str(tmp_path / "o")])
    assert result.exit_code == EXIT_USAGE
    assert "record 2" in result.output


# No order-12 survivor has a toroidal complement
@pytest.mark.slow
def test_no_planar_toroidal_split_of_k12(tmp_path):
    config = SearchConfig(workers=4, checkpoint=str(tmp_path / "c"), witnesses=str(tmp_path / "w"),
                          report=str(tmp_path / "r"))
    report = run_search(config)
    assert report.input_count == 7595
    assert report.stages == [("maxDegree", 4119), ("deg8Independence", 1378)]
    assert report.tasks_total == 1378
    assert report.tasks_failed == 0
    assert report.witnesses_found == 0
