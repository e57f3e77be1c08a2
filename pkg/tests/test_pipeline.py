"""Tests for the verb facade, pipeline scripts and the command line."""

from pathlib import Path

import pytest

import src.main as cli
from src.domain.errors import PipelineError, UnknownArtifact, WordSyntaxError
from src.domain.pipeline import StepStatus
from src.interfaces.service import IServiceFacade

PIPELINES = sorted((Path(__file__).resolve().parent.parent / "pipelines").glob("*.vpg"))


@pytest.fixture
def runner(container):
    return container.pipeline_runner


@pytest.fixture
def facade(container):
    return container.service_facade


@pytest.fixture
def use_container(monkeypatch, container):
    monkeypatch.setattr(cli, "create_container", lambda: container)
    return container


def test_unknown_verb(facade):
    with pytest.raises(WordSyntaxError):
        facade.execute("frobnicate", [])


def test_wrong_arity_is_a_syntax_error(facade):
    with pytest.raises(WordSyntaxError):
        facade.execute("words", ["A"])


def test_verbs_are_listed(facade):
    assert "expect-error" in facade.verbs
    assert facade.verbs == sorted(facade.verbs)


def test_container_wires_the_facade_through_its_interface(container):
    assert isinstance(container.service_facade, IServiceFacade)
    assert container.service_facade.is_assertion("expect-empty")
    assert not container.service_facade.is_assertion("union")


def test_builtin_and_queries(facade):
    facade.execute("builtin", ["A", "anbn"])
    assert facade.execute("run", ["A", "aabb"]).startswith("accepted")
    assert facade.execute("words", ["A", "4"]) == "3 words: ε, a b, a a b b"
    assert facade.execute("list", []) == "A (vpa)"


def test_empty_script_gives_an_empty_report(runner):
    report = runner.run_pipeline("")
    assert report.steps == ()
    assert report.render() == ""
    assert report.ok


def test_comments_and_blank_lines_are_skipped(runner):
    report = runner.run_pipeline("# a comment\n\nbuiltin A anbn  # trailing\n")
    assert [step.line_no for step in report.steps] == [3]


def test_assertions_pass(runner):
    script = "\n".join([
        "builtin A padded",
        "expect-accepts A aaAbb",
        "expect-rejects A aab",
        'expect-language A 10 "[a a A]^{n} b^{2n}"',
        "expect-nonempty A ε",
    ])
    report = runner.run_pipeline(script)
    assert [step.status for step in report.steps] == [StepStatus.OK] + [StepStatus.PASS] * 4
    assert report.passed == 4
    assert report.render().splitlines()[1] == "PASS 2: expect-accepts A aaAbb"


def test_failed_assertion_does_not_stop_the_script(runner):
    report = runner.run_pipeline("builtin A anbn\nexpect-accepts A aab\nexpect-accepts A ab\n")
    assert [step.status for step in report.steps] == [StepStatus.OK, StepStatus.FAIL, StepStatus.PASS]
    assert not report.ok
    assert report.render().splitlines()[1].startswith("FAIL 2: expect-accepts A aab -> ")


def test_error_stops_the_script_with_a_partial_report(runner):
    with pytest.raises(PipelineError) as info:
        runner.run_pipeline("builtin A anbn\nwords A 4\nunion U A missing\nwords A 2\n")
    assert info.value.line_no == 3
    assert isinstance(info.value.cause, UnknownArtifact)
    assert len(info.value.report.steps) == 2


def test_unbalanced_quote_is_a_syntax_error(runner):
    with pytest.raises(PipelineError) as info:
        runner.run_pipeline('builtin A anbn\nwords A "4\n')
    assert info.value.line_no == 2
    assert isinstance(info.value.cause, WordSyntaxError)


def test_expect_error_across_partitions(runner):
    script = "\n".join([
        "builtin L anbn-cstar",
        "builtin R astar-bncn",
        "expect-error PartitionMismatch intersect X L R",
        "expect-error PartitionMismatch union X L R",
    ])
    report = runner.run_pipeline(script)
    assert report.passed == 2
    assert "PartitionMismatch" in report.steps[2].detail


def test_expect_error_fails_when_the_verb_succeeds(runner):
    report = runner.run_pipeline("builtin A anbn\nexpect-error PartitionMismatch union U A A\n")
    assert report.steps[1].status is StepStatus.FAIL


def test_closure_and_equivalence_in_a_script(runner):
    script = "\n".join([
        "builtin A anbn",
        "builtin B anbn-le3",
        "union U A B",
        "expect-equiv U A",
        "determinize D B",
        "expect-deterministic D",
        "complement C A",
        "intersect E A C",
        "expect-empty E",
    ])
    assert runner.run_pipeline(script).ok


def test_reduced_image_of_padded(runner):
    script = "\n".join([
        "builtin A padded",
        "builtin F padded-group",
        'expect-reduced-image A F 20 12 "a^{n} b^{2n}"',
    ])
    report = runner.run_pipeline(script)
    assert report.steps[-1].status is StepStatus.PASS


def test_stallings_verbs(runner):
    script = "\n".join([
        "builtin F free2",
        "stallings H F aa b abA",
        "expect-index H finite 2",
        "expect-member H aBBa",
        "expect-not-member H a",
        "stallings K F baB",
        "expect-index K infinite",
        "expect-witness K 4",
        "preimage P H",
        "decompose Q P",
        "expect-cosets Q P 4",
    ])
    report = runner.run_pipeline(script)
    assert report.ok
    assert report.passed == 6


def test_recognisable_verbs(runner):
    script = "\n".join([
        "builtin G s3",
        "wpdfa W G",
        "decompose U W",
        "expect-cosets U W 4",
        "expect-identity G ststst",
        "expect-witness-family G s t 2",
    ])
    report = runner.run_pipeline(script)
    assert report.ok
    assert report.steps[2].detail.startswith("U: 1 of 6 cosets")


def test_profile_is_written_as_csv(runner, container):
    runner.run_pipeline("builtin W wpz\nprofile W sim0 2 out/profile.csv\n")
    written = (container.workspace.base_dir / "out" / "profile.csv").read_text(encoding="utf-8")
    assert written == "bound,sim0\n1,2\n2,3\n"


def test_profile_expectations(runner):
    script = "\n".join([
        "builtin W wpz",
        "expect-profile W sim0 increasing 1 4",
        "builtin A anbn",
        "expect-profile A sim0 stable 2 4",
        "expect-profile A approx 1 2 2",
    ])
    assert runner.run_pipeline(script).passed == 3


def test_equation_file(runner, container):
    container.workspace.write_text("centraliser.eq", "X a X^-1 = a\nover F\nmode group\n")
    script = "\n".join([
        "builtin F free2",
        'expect-solutions centraliser.eq 2 "X=" "X=a" "X=A" "X=a a" "X=A A"',
    ])
    assert runner.run_pipeline(script).ok


def test_encoding_through_the_group(runner, container):
    container.workspace.write_text("split.eq", "X Y = a b ; over A\n")
    report = runner.run_pipeline("builtin A anbn\nexpect-encoding split.eq 2\n")
    assert report.steps[1].status is StepStatus.PASS


def test_main_runs_scripts(use_container, display, tmp_path):
    script = tmp_path / "ok.vpg"
    script.write_text("builtin A anbn\nexpect-accepts A ab\n", encoding="utf-8")
    assert cli.main(["pipeline", "run", str(script)]) == cli.EXIT_OK
    assert "PASS 2: expect-accepts A ab" in display.get_output()


def test_main_exit_code_for_failed_assertions(use_container, tmp_path):
    script = tmp_path / "fail.vpg"
    script.write_text("builtin A anbn\nexpect-rejects A ab\n", encoding="utf-8")
    assert cli.main(["pipeline", "run", str(script)]) == cli.EXIT_ASSERTION


def test_main_exit_code_for_errors(use_container, display, tmp_path):
    script = tmp_path / "broken.vpg"
    script.write_text("builtin A anbn\nwords B 3\n", encoding="utf-8")
    assert cli.main(["pipeline", "run", str(script)]) == cli.EXIT_ERROR
    assert "OK 1: builtin A anbn" in display.get_output()
    assert "UnknownArtifact" in display.get_errors()[0]


def test_main_noun_verb(use_container, display):
    assert cli.main(["vpa", "words", "A", "4", "--builtin", "A=anbn"]) == cli.EXIT_OK
    assert display.get_results() == [("vpa words", "3 words: ε, a b, a a b b")]


def test_main_accepts_short_noun_names(use_container, display):
    argv = ["stallings", "build", "H", "F", "aa", "b", "abA", "--builtin", "F=free2"]
    assert cli.main(argv) == cli.EXIT_OK
    assert display.get_results()[-1] == ("stallings build", "H: 2 vertices, 4 edges")
    assert cli.main(["cong", "classes", "W", "sim0", "2", "2", "--builtin", "W=wpz"]) == cli.EXIT_OK
    assert display.get_results()[-1][0] == "cong classes"
    assert cli.NOUN_VERBS["stallings"]["dfa"] == "preimage"
    assert cli.NOUN_VERBS["eqn"] == cli.NOUN_VERBS["equation"]


def test_main_reports_domain_errors(use_container, display):
    assert cli.main(["vpa", "words", "A", "4"]) == cli.EXIT_ERROR
    assert display.get_errors()[0].startswith("UnknownArtifact")


def test_main_lists_verbs_and_catalog(use_container, display):
    assert cli.main(["pipeline", "verbs"]) == cli.EXIT_OK
    assert "expect-witness-family\n" in display.get_output()
    assert cli.main(["catalog", "list"]) == cli.EXIT_OK
    title, columns, rows = display.get_tables()[0]
    assert columns == ("entry", "kind", "description")
    assert ("padded", "vpa", "{(a a A)^n b^2n}") in rows


@pytest.mark.parametrize("script", PIPELINES, ids=lambda path: path.stem)
def test_checked_in_pipelines_pass_the_same_way_twice(runner, script):
    first = runner.run_file(script)
    assert first.ok, first.render()
    assert first.passed > 0
    second = runner.run_file(script)
    assert second.render().encode("utf-8") == first.render().encode("utf-8")
