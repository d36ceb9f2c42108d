import json

import pytest

from sp4cert.cli import main
from sp4cert.decompose import GeneratorWord
from sp4cert.generators import generator
from sp4cert.groups import GroupLabel
from sp4cert.matrices import mat4_to_lists
from sp4cert.sampling import SampleSpec, sample


@pytest.fixture()
def m0_file(tmp_path):
    path = tmp_path / "m0.json"
    path.write_text(json.dumps(mat4_to_lists(generator("M0", 5))))
    return str(path)


@pytest.fixture()
def member_file(tmp_path):
    k = sample(SampleSpec(GroupLabel.GAMMA_1P, 3, 77, 7))
    path = tmp_path / "k.json"
    path.write_text(json.dumps(mat4_to_lists(k)))
    return str(path), k


def test_member_true(m0_file, capsys):
    code = main(["member", "--group", "gamma_1p", "--p", "5", "--in", m0_file])
    assert code == 0
    assert capsys.readouterr().out.strip() == "true"


def test_member_false_is_math_failure(m0_file, capsys):
    code = main(["member", "--group", "gamma_p2", "--p", "5", "--in", m0_file])
    assert code == 1
    assert capsys.readouterr().out.strip() == "false"


def test_member_bad_file_is_io_failure(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code = main(["member", "--group", "gamma_1p", "--p", "5", "--in", str(path)])
    assert code == 2


def test_member_missing_file(tmp_path):
    code = main(
        ["member", "--group", "gamma_1p", "--p", "5", "--in", str(tmp_path / "no.json")]
    )
    assert code == 2


def test_even_p_rejected_up_front(m0_file, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["member", "--group", "gamma_1p", "--p", "4", "--in", m0_file])
    assert exc.value.code == 2


def test_decompose_writes_replayable_word(member_file, tmp_path, capsys):
    path, k = member_file
    out = tmp_path / "word.json"
    code = main(["decompose", "--p", "3", "--in", path, "--out", str(out)])
    assert code == 0
    word = GeneratorWord.from_json_obj(json.loads(out.read_text()))
    assert word.replay() == k


def test_decompose_non_member_exits_one(m0_file, tmp_path):
    # m0 at the wrong p: entry pattern fails
    k = generator("Mt2", 3)
    path = tmp_path / "t.json"
    path.write_text(json.dumps(mat4_to_lists(k)))
    code = main(["decompose", "--p", "3", "--in", str(path)])
    assert code == 1


def test_certify_generators(tmp_path, capsys):
    out = tmp_path / "table.json"
    code = main(["certify-generators", "--p", "3", "--out", str(out)])
    assert code == 0
    captured = capsys.readouterr().out
    assert captured.strip().endswith("PASS")
    table = json.loads(out.read_text())
    assert set(table) == {"M2", "L2", "L4", "M3", "M4", "M1"}


def test_witness_verify_pipeline(member_file, tmp_path, capsys):
    path, k = member_file
    cert_path = tmp_path / "cert.json"
    assert main(["witness", "--p", "3", "--in", path, "--out", str(cert_path)]) == 0
    assert main(["verify", "--cert", str(cert_path)]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("PASS")
    # byte-identical on re-serialisation: no loss through the file
    from sp4cert.certificates import parse, serialize

    text = cert_path.read_text()
    assert serialize(parse(text)) == text.rstrip("\n")


def test_verify_with_matching_target(member_file, tmp_path):
    path, k = member_file
    cert_path = tmp_path / "cert.json"
    main(["witness", "--p", "3", "--in", path, "--out", str(cert_path)])
    assert main(["verify", "--cert", str(cert_path), "--target", path]) == 0


def test_verify_with_wrong_target(member_file, m0_file, tmp_path):
    path, _ = member_file
    cert_path = tmp_path / "cert.json"
    main(["witness", "--p", "3", "--in", path, "--out", str(cert_path)])
    assert main(["verify", "--cert", str(cert_path), "--target", m0_file]) == 1


def test_verify_garbage_exits_two(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("]]]")
    assert main(["verify", "--cert", str(path)]) == 2


def test_check_identities(capsys):
    assert main(["check-identities", "--p", "7"]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_section4(capsys):
    assert main(["section4", "--c", "2", "--samples", "300", "--tol", "1e-10"]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_section4_zero_tol_fails(capsys):
    assert main(["section4", "--c", "1", "--samples", "100", "--tol", "0"]) == 1


@pytest.mark.parametrize("suite", ["decompose", "predicates", "identities"])
def test_fuzz_suites(suite, capsys):
    assert main(["fuzz", "--p", "3", "--n", "5", "--seed", "3", "--suite", suite]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_fuzz_witness_suite(capsys):
    assert main(["fuzz", "--p", "3", "--n", "2", "--seed", "5", "--suite", "witness"]) == 0
