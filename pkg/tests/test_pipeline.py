import json
import warnings
from fractions import Fraction

import pytest
from click.testing import CliRunner

from torelli.branching import ClassSeries, OrthSympClass
from torelli.cli import main
from torelli.partitions import Partition, parse_partition
from torelli.pipeline import (
    ConfigError,
    ExtrapolationWarning,
    LimitOnlyCaveat,
    NegativeMultiplicity,
    PipelineConfig,
    Unsupported,
    _validate_entries,
    bundle_scalar_series,
    closed_fiber_series,
    compute_cohomology,
    oracle_check,
    stable_range,
)
from torelli.symfunc import change_basis


def cls(epsilon, text):
    coeffs = {}
    if text.strip() != "0":
        for piece in text.split("+"):
            piece = piece.strip()
            if "*" in piece:
                mult, lam = piece.split("*")
                coeffs[parse_partition(lam)] = int(mult)
            else:
                coeffs[parse_partition(piece)] = 1
    return OrthSympClass(epsilon, coeffs)


def test_stable_range():
    assert stable_range(6, 11) == 4
    assert stable_range(2, 10) == 6
    assert stable_range(6, 3) == 0
    with pytest.raises(Unsupported):
        stable_range(4, 5)


def test_config_validation():
    with pytest.raises(ConfigError):
        PipelineConfig(two_n=5, max_degree=2)
    with pytest.raises(ConfigError):
        PipelineConfig(two_n=6, max_degree=2, variant="torus")
    with pytest.raises(ConfigError):
        PipelineConfig(two_n=6, max_degree=-1)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        PipelineConfig(two_n=4, max_degree=1)
    assert any(issubclass(w.category, LimitOnlyCaveat) for w in caught)


def test_dimension_six_table():
    table = compute_cohomology(PipelineConfig(two_n=6, max_degree=4, g=11))
    assert table.epsilon == -1
    assert table.trusted_up_to == 4
    assert table.entries[0] == OrthSympClass.unit(-1)
    assert table.entries[1] == cls(-1, "1")
    assert table.entries[2] == cls(-1, "1^2 + 0")
    assert table.entries[3] == cls(-1, "2*1^3 + 2*1")
    assert table.entries[4] == cls(-1, "2*1^4 + 2,1^2 + 3*1^2 + 2 + 2*0")


def test_dimension_six_snapshots():
    table = compute_cohomology(PipelineConfig(two_n=6, max_degree=4))
    chb = table.snapshots["chB"]
    assert chb.coefficient(1) == change_basis("h1")
    assert chb.coefficient(2) == change_basis("2")
    assert chb.coefficient(3) == change_basis("h3+h1")
    assert chb.coefficient(4) == change_basis("h2+1")
    pleth = table.snapshots["plethysm"]
    assert pleth.coefficient(0) == change_basis("1")
    assert pleth.coefficient(1) == change_basis("s[1]")
    assert pleth.coefficient(2) == change_basis("2+s[2]")
    assert pleth.coefficient(3) == change_basis("3*s[1]+2*s[3]")
    assert pleth.coefficient(4) == change_basis("4+s[1^2]+4*s[2]+s[3,1]+2*s[4]")
    post = table.snapshots["post-D"]
    assert post.coefficient(2) == cls(-1, "2*0 + 1^2")
    assert post.coefficient(3) == cls(-1, "3*1 + 2*1^3")
    assert post.coefficient(4) == cls(-1, "4*0 + 2 + 4*1^2 + 2,1^2 + 2*1^4")


def test_dimension_two_table():
    table = compute_cohomology(PipelineConfig(two_n=2, max_degree=3, g=10))
    assert table.trusted_up_to == 3
    assert table.entries[1] == cls(-1, "1^3 + 1")
    assert table.entries[2] == cls(-1, "2*1^4 + 2^2,1^2 + 2,1^2 + 2*1^2 + 1^6")
    h3 = (
        "1^9 + 3*2,1^3 + 3,2,1^2 + 2^2,1^5 + 2*2^2,1 + 3*1^3 + 2*1^7 + 1"
        " + 2*2^2,1^3 + 2^3,1^3 + 4*1^5 + 3^2,1^3 + 2*2,1^5 + 2,1"
        " + 2*2^3,1 + 3,2^3"
    )
    assert table.entries[3] == cls(-1, h3)
    assert any("finite dimensional" in note for note in table.footnotes)


def test_point_variant():
    point = compute_cohomology(
        PipelineConfig(two_n=2, max_degree=3, variant="point")
    )
    assert point.entries[1] == cls(-1, "1^3 + 1")
    assert point.entries[2] == cls(
        -1, "0 + 1^6 + 2^2,1^2 + 2*1^4 + 2,1^2 + 2*1^2"
    )
    # one copy of V_{2^3,1^3}, pinned by the enumerative route
    p3 = (
        "1^9 + 2^2,1^5 + 2*1^7 + 2^3,1^3 + 2*2,1^5 + 3^2,1^3 + 2*2^2,1^3"
        " + 4*1^5 + 3,2^3 + 2*2^3,1 + 3,2,1^2 + 3*2,1^3 + 2*2^2,1 + 4*1^3"
        " + 2,1 + 2*1"
    )
    assert point.entries[3] == cls(-1, p3)


def test_closed_fiber_inverse_series():
    inv = closed_fiber_series(1, -1, 3).invert()
    assert inv.coefficient(0) == OrthSympClass.unit(-1)
    assert inv.coefficient(1) == -cls(-1, "1")
    assert inv.coefficient(2) == cls(-1, "1^2 + 2")
    assert inv.coefficient(3) == -cls(-1, "1 + 1^3 + 2*2,1 + 3")


def test_closed_variant():
    closed = compute_cohomology(
        PipelineConfig(two_n=2, max_degree=3, variant="closed")
    )
    assert closed.entries[1] == cls(-1, "1^3")
    assert closed.entries[2] == cls(-1, "1^2 + 1^4 + 1^6 + 2^2,1^2")
    c3 = (
        "1^3 + 1 + 2*1^5 + 1^7 + 1^9 + 2,1^3 + 2,1^5 + 2^2,1"
        " + 2^2,1^3 + 2^2,1^5 + 2^3,1 + 2^3,1^3 + 3,2^3 + 3^2,1^3"
    )
    assert closed.entries[3] == cls(-1, c3)


def test_closed_extrapolation_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        compute_cohomology(PipelineConfig(two_n=6, max_degree=2, variant="closed"))
    assert any(issubclass(w.category, ExtrapolationWarning) for w in caught)


def test_truncation_consistency():
    big = compute_cohomology(PipelineConfig(two_n=6, max_degree=4))
    small = compute_cohomology(PipelineConfig(two_n=6, max_degree=2))
    assert big.entries[: len(small.entries)] == small.entries


def test_negative_multiplicity_guard():
    bad = ClassSeries(
        -1,
        {1: OrthSympClass(-1, {Partition((1,)): Fraction(-2)})},
        trunc=1,
    )
    with pytest.raises(NegativeMultiplicity):
        _validate_entries(bad, 1)
    ragged = ClassSeries(
        -1,
        {1: OrthSympClass(-1, {Partition((1,)): Fraction(1, 2)})},
        trunc=1,
    )
    with pytest.raises(NegativeMultiplicity):
        _validate_entries(ragged, 1)


def test_bundle_scalar_series():
    series = bundle_scalar_series(1, 6)
    # 1/(1 - t^2) when the window is empty
    assert [int(series.coefficient(k).coeff(Partition(()))) for k in range(7)] == [
        1, 0, 1, 0, 1, 0, 1,
    ]


def test_oracle_small_windows():
    report = oracle_check(6, 3, 3)
    assert report.ok, report.failures()
    assert len(report.cells) == 16
    for cell in report.cells:
        if cell.q == 1 and cell.d == 1:
            assert cell.lhs == change_basis("s[1]")
        if cell.q == 3 and cell.d == 3:
            assert cell.lhs == change_basis("2*s[1^3]")
    assert oracle_check(2, 2, 4).ok


def _run(args):
    return CliRunner().invoke(main, args, catch_exceptions=False)


def test_cli_cohomology_json():
    result = _run(
        ["cohomology", "--dim", "6", "--max-degree", "3", "--genus", "11",
         "--format", "json"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["dim"] == 6
    assert payload["variant"] == "disc"
    assert payload["trusted_up_to"] == 3
    degree3 = payload["table"][3]["classes"]
    assert {"lambda": [1], "mult": 2} in degree3
    assert {"lambda": [1, 1, 1], "mult": 2} in degree3


def test_cli_deterministic_output():
    args = ["cohomology", "--dim", "6", "--max-degree", "3", "--format", "json"]
    assert _run(args).output == _run(args).output


def test_cli_text_output():
    result = _run(["cohomology", "--dim", "6", "--max-degree", "2", "--genus", "11"])
    assert result.exit_code == 0
    assert "H^0" in result.output
    assert "V[1^2]" in result.output
    assert "trusted through degree 2" in result.output


def test_cli_rejects_bad_dimension():
    runner = CliRunner()
    result = runner.invoke(main, ["cohomology", "--dim", "5", "--max-degree", "2"])
    assert result.exit_code == 3
    result = runner.invoke(
        main, ["series", "--dim", "6", "--max-degree", "2", "--stage", "bogus"]
    )
    assert result.exit_code == 3


def test_cli_series_stage():
    result = _run(["series", "--dim", "6", "--max-degree", "3", "--stage", "chB"])
    assert result.exit_code == 0
    assert result.output == "s[1]*t + 2*t^2 + (s[1] + s[3])*t^3\n"


def test_cli_oracle():
    result = _run(["oracle", "--dim", "6", "--qmax", "2", "--dmax", "2"])
    assert result.exit_code == 0
    assert "q=1 d=1 pass" in result.output
    assert "all" in result.output and "pass" in result.output


def test_cli_lclass():
    result = _run(["lclass", "--max", "2", "--dim", "6"])
    assert result.exit_code == 0
    assert "7/45" in result.output


def test_cli_range():
    result = _run(["range", "--dim", "6", "--genus", "11"])
    assert result.exit_code == 0
    assert "4" in result.output
    bad = CliRunner().invoke(main, ["range", "--dim", "4", "--genus", "11"])
    assert bad.exit_code == 3


def test_cli_graph_reduce(tmp_path):
    blob = {
        "n": 1,
        "legs": [1],
        "vertices": [{"label": "1"}, {"label": "1"}, {"label": "1"}],
        "half_edges": [
            {"vertex": 0}, {"vertex": 0}, {"vertex": 0},
            {"vertex": 1}, {"vertex": 1}, {"vertex": 1},
            {"vertex": 2}, {"vertex": 2}, {"vertex": 2},
        ],
        "matching": [
            ["L1", "h0"], ["h1", "h3"], ["h2", "h6"], ["h4", "h7"], ["h5", "h8"],
        ],
    }
    path = tmp_path / "theta.json"
    path.write_text(json.dumps(blob))
    result = _run(["graph", "reduce", str(path)])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["n"] == 1
    (term,) = payload["terms"]
    assert abs(term["coefficient"]) == 1
    (part,) = term["parts"]
    assert part["label"] == "e^2"


def test_cli_invariants_rank():
    result = _run(
        ["invariants", "rank", "--g", "1", "--set-size", "4", "--epsilon", "-1"]
    )
    assert result.exit_code == 0
    assert "rank 2 of 3" in result.output
