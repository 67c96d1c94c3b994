import pytest

from phiplane.cli import run
from phiplane.exchange import build_base_exchange, exchange_tower, sample_points
from phiplane.render import exchange_svg, parse_exchange, serialize_exchange


@pytest.fixture(scope="module")
def base():
    return build_base_exchange()


# -- serialization ------------------------------------------------------

def test_serialize_roundtrip_base(base):
    text = serialize_exchange(base)
    back = parse_exchange(text)
    assert serialize_exchange(back) == text
    assert back.level == base.level
    assert back.domain_area() == base.domain_area()
    for p in sample_points(base, 10, seed=6):
        assert back.locate(p) == base.locate(p)


def test_serialize_roundtrip_levels():
    for E in exchange_tower(3):
        assert serialize_exchange(parse_exchange(serialize_exchange(E))) \
            == serialize_exchange(E)


def test_serialized_header(base):
    lines = serialize_exchange(base).splitlines()
    assert lines[0] == "exchange T_phi 1 2"
    assert lines[1].startswith("piece 1 0 0 ")


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_exchange("bogus 1 2 3\n")


def test_svg_polygon_count(base):
    svg = exchange_svg(base)
    strips = sum(len(p.region.strips) for p in base.pieces)
    assert svg.count("<polygon") == strips
    assert svg.startswith("<svg ")
    assert svg == exchange_svg(base)  # deterministic


# -- command line -------------------------------------------------------

def run_capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_base_roundtrips(capsys, base):
    code, out, err = run_capture(capsys, ["base"])
    assert code == 0 and err == ""
    assert serialize_exchange(parse_exchange(out)) == serialize_exchange(base)


def test_cli_deterministic(capsys):
    _, first, _ = run_capture(capsys, ["sums", "--max-n", "40"])
    _, second, _ = run_capture(capsys, ["sums", "--max-n", "40"])
    assert first == second


def test_cli_complexity_rows(capsys):
    code, out, err = run_capture(capsys, ["complexity", "--level", "3",
                                          "--max-n", "4"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "level,n,p_n"
    assert lines[1] == "3,1,2"
    assert len(lines) == 5


def test_cli_translation_square_law(capsys):
    code, out, _ = run_capture(capsys, ["translation", "--max-n", "3",
                                        "--allow-dependent"])
    assert code == 0
    assert out.splitlines() == ["n,p_n", "1,4", "2,9", "3,16"]


def test_cli_translation_dependence_fails(capsys):
    code, out, err = run_capture(capsys, ["translation", "--max-n", "2"])
    assert code == 1
    assert "hypothesis check failed" in err


def test_cli_theorem1_reports(capsys):
    code, out, _ = run_capture(capsys, ["theorem1", "--n", "2"])
    assert code == 0
    assert out.count("scenario:") == 3
    assert out.count("forced relation") == 3


def test_cli_language_converges(capsys):
    code, out, _ = run_capture(capsys, ["language", "--seed-lang", "min",
                                        "--iters", "12", "--max-len", "6"])
    assert code == 0
    assert "121121" in out.splitlines()


def test_cli_render(capsys):
    code, out, _ = run_capture(capsys, ["render", "--level", "2"])
    assert code == 0
    assert out.count("<polygon") == 8


def test_cli_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run_capture(capsys, ["-o", str(target),
                                        "sums", "--max-n", "5"])
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == "n,s_n,is_record"


def test_cli_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["complexity", "--level", "0"])
    assert exc.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        run(["translation", "--alpha", "1,2,3"])
    assert exc.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        run([])
    assert exc.value.code == 2
    capsys.readouterr()
