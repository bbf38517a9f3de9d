import io

import pytest

from wordcount import chartab, fileio, groups
from wordcount.cli import main
from wordcount.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info_trivial_group(capsys):
    code, out, _ = run(capsys, "info", "--group", "builtin:cyclic(1)")
    assert code == 0
    assert "order 1" in out
    assert "class 0" in out


def test_zeta_all_methods_agree(capsys):
    code, out, _ = run(capsys, "zeta", "--group", "builtin:symmetric(3)",
                       "--n", "3", "--method", "all")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["class_rep", "size", "brute", "char",
                                    "closed"]
    assert lines[1].split("\t")[2:] == ["162", "162", "162"]
    assert lines[2].split("\t")[2:] == ["27", "27", "27"]
    assert lines[3].split("\t")[2:] == ["0", "0", "0"]


def test_zeta_csv(capsys):
    code, out, _ = run(capsys, "zeta", "--group", "builtin:symmetric(3)",
                       "--n", "2", "--method", "brute", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1].endswith(",1,18,1,2")


def test_count_with_domain(capsys):
    code, out, _ = run(capsys, "count", "--group", "builtin:symmetric(3)",
                       "--word", "[x1,x2]", "--domain", "x1=derived")
    assert code == 0
    counts = [int(line.split("\t")[1]) for line in out.splitlines()[1:]]
    assert sorted(counts) == [0, 0, 0, 3, 3, 12]


def test_verify_closed_forms_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "closed-forms")
    assert code == 0
    assert "FAIL" not in out.replace("0 failed", "")
    assert "FLAGGED" in out
    assert "display=-18 recomputed=27" in out
    assert "display=1490944 class-function=1359872" in out


def test_isoclinic_command(capsys):
    code, out, _ = run(capsys, "isoclinic", "--group", "builtin:dihedral(8)",
                       "--other", "builtin:quaternion(8)", "--n", "1")
    assert code == 0
    assert "scaling_factor 1" in out
    code, out, _ = run(capsys, "isoclinic", "--group", "builtin:quaternion(8)",
                       "--other", "builtin:cyclic(8)", "--n", "1")
    assert code == 1
    assert "not isoclinic" in out


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--group", "builtin:symmetric(3)",
                       "--n", "3")
    assert code == 0
    assert "agree True" in out


def test_usage_errors(capsys):
    code, _, err = run(capsys, "zeta", "--group", "builtin:nosuch(3)",
                       "--n", "2")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "count", "--group", "builtin:symmetric(3)",
                       "--word", "x1^")
    assert code == 2
    code, _, err = run(capsys, "zeta", "--group", "symmetric(3)", "--n", "2")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nosuch"])
    assert exc.value.code == 2


def test_group_file_roundtrip(tmp_path):
    S3 = groups.builtin("symmetric", 3)
    out = io.StringIO()
    fileio.export_group(S3, out)
    path = tmp_path / "s3.group"
    path.write_text(out.getvalue())
    G = fileio.import_group(path)
    assert G.mul == S3.mul


def test_perm_file(tmp_path):
    path = tmp_path / "s3perm.group"
    path.write_text("# symmetric group on 3 points\nperm 3 2\n1 0 2\n1 2 0\n")
    G = fileio.import_group(path)
    assert G.order == 6


def test_parse_errors_have_line_numbers(tmp_path):
    bad = tmp_path / "bad.group"
    bad.write_text("cayley 3\n0 1 2\n1 2 0\n")
    with pytest.raises(ParseError):
        fileio.import_group(bad)
    bad.write_text("cayley 2\n0 1\n1 x\n")
    with pytest.raises(ParseError) as err:
        fileio.import_group(bad)
    assert err.value.line == 3
    with pytest.raises(ParseError):
        fileio.parse_group("widget 3\n")


def test_chartab_cache(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(fileio.CACHE_ENV, str(tmp_path / "cache"))
    code, out1, _ = run(capsys, "chartab", "--group", "builtin:quaternion(8)")
    assert code == 0
    files = list((tmp_path / "cache").glob("*.chartab"))
    assert len(files) == 1
    # second run loads from the cache and prints identical output
    code, out2, _ = run(capsys, "chartab", "--group", "builtin:quaternion(8)")
    assert code == 0 and out1 == out2
    Q8 = groups.builtin("quaternion", 8)
    table = fileio.cached_character_table(Q8)
    assert table.degrees == chartab.character_table(Q8).degrees
