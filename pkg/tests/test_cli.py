import json

from puiseux.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out else None, err


def test_frobenius_documented_example(capsys):
    code, payload, _ = run_json(
        capsys, "frobenius", "--spec", '{"kind":"numerical","generators":[3,5]}'
    )
    assert code == 0 and payload == {"frobenius": 7}


def test_frobenius_reports_scale_for_non_coprime_input(capsys):
    code, payload, _ = run_json(
        capsys, "frobenius", "--spec", '{"kind":"numerical","generators":[6,10]}'
    )
    assert code == 0
    assert payload["frobenius"] == 7 and payload["scale"] == 2


def test_lengths_documented_example(capsys):
    code, payload, _ = run_json(
        capsys, "lengths", "--spec", '{"kind":"finite","generators":["2","3"]}', "--x", "6"
    )
    assert code == 0 and payload == {"lengths": [2, 3]}


def test_classify_documented_example(capsys):
    code, payload, _ = run_json(
        capsys, "classify", "--spec", '{"kind":"finite","generators":["2/3"]}'
    )
    assert code == 0
    for key in ("transferFinite", "transferKrull", "krull", "cMonoid"):
        assert payload[key] is True


def test_member_yes(capsys):
    code, payload, _ = run_json(
        capsys,
        "member",
        "--spec",
        '{"kind":"finite","generators":["3/2","5/2"]}',
        "--x",
        "4",
    )
    assert code == 0 and payload["verdict"] == "yes"
    assert payload["depth"] == 8  # default echoed


def test_member_unknown_exits_three(capsys):
    code, payload, _ = run_json(
        capsys,
        "member",
        "--spec",
        '{"kind":"primeReciprocal","form":"1/p","primes":"all"}',
        "--x",
        "1/6",
    )
    assert code == 3 and payload["verdict"] == "unknown"


def test_member_no_is_exit_zero(capsys):
    code, payload, _ = run_json(
        capsys,
        "member",
        "--spec",
        '{"kind":"finite","generators":["3/2","5/2"]}',
        "--x",
        "1/2",
    )
    assert code == 0 and payload["verdict"] == "no"


def test_malformed_json_exits_one_with_position(capsys):
    code, out, err = run(capsys, "member", "--spec", '{"kind":', "--x", "1")
    assert code == 1 and out == ""
    assert "position" in err and "line" in err


def test_unreadable_spec_file_exits_one(capsys):
    code, out, err = run(capsys, "member", "--spec", "/nonexistent/spec.json", "--x", "1")
    assert code == 1 and "cannot read spec file" in err


def test_spec_file_input(tmp_path, capsys):
    path = tmp_path / "spec.json"
    path.write_text('{"kind":"finite","generators":["2","3"]}')
    code, payload, _ = run_json(capsys, "lengths", "--spec", str(path), "--x", "6")
    assert code == 0 and payload == {"lengths": [2, 3]}


def test_float_rational_rejected_exits_two(capsys):
    code, out, err = run(
        capsys,
        "member",
        "--spec",
        '{"kind":"finite","generators":["2"]}',
        "--x",
        "1.5",
    )
    assert code == 2 and "exact" in err


def test_factor_refuses_raw_family_but_accepts_truncate(capsys):
    code, out, err = run(
        capsys,
        "factor",
        "--spec",
        '{"kind":"geometric","ratio":"3/2","from":1}',
        "--x",
        "3/2",
    )
    assert code == 2 and "--truncate" in err
    code, payload, _ = run_json(
        capsys,
        "factor",
        "--spec",
        '{"kind":"geometric","ratio":"3/2","from":1}',
        "--x",
        "3/2",
        "--truncate",
        "4",
    )
    assert code == 0
    assert payload["truncatedTo"] == 4
    assert payload["factorizations"] == [[{"atom": "3/2", "count": 1}]]


def test_elasticity_command(capsys):
    code, payload, _ = run_json(
        capsys,
        "elasticity",
        "--spec",
        '{"kind":"finite","generators":["2","3"]}',
        "--x",
        "6",
    )
    assert code == 0 and payload == {"elasticity": "3/2"}


def test_apery_command(capsys):
    code, payload, _ = run_json(
        capsys, "apery", "--spec", '{"kind":"numerical","generators":[3,5]}', "--m", "3"
    )
    assert code == 0 and payload == {"m": 3, "apery": [0, 10, 5]}


def test_atoms_command(capsys):
    code, payload, _ = run_json(
        capsys,
        "atoms",
        "--spec",
        '{"kind":"geometric","ratio":"3/2","from":1}',
        "--depth",
        "3",
    )
    assert code == 0
    assert payload == {"atoms": ["3/2", "9/4", "27/8"], "depth": 3}


def test_certify_primary_command(capsys):
    code, payload, _ = run_json(
        capsys,
        "certify-primary",
        "--spec",
        '{"kind":"geometric","ratio":"5/2","from":1}',
        "--n",
        "2",
        "--s",
        "5",
        "--bound",
        "30",
        "--depth",
        "4",
    )
    assert code == 0 and payload["kind"] == "scopedCertificate"


def test_certify_primary_inconclusive_exits_three(capsys):
    code, payload, _ = run_json(
        capsys,
        "certify-primary",
        "--spec",
        '{"kind":"primeReciprocal","form":"1/p","primes":"all"}',
        "--n",
        "2",
        "--s",
        "1/5",
        "--bound",
        "1",
        "--depth",
        "3",
    )
    assert code == 3 and payload["kind"] == "inconclusive"


def test_refute_primary_command(capsys):
    code, payload, _ = run_json(
        capsys,
        "refute-primary",
        "--spec",
        '{"kind":"primeReciprocal","form":"1/p","primes":"all"}',
        "--n",
        "2",
        "--s",
        "1/2",
    )
    assert code == 0
    assert payload["kind"] == "theoremBackedRefutation"
    assert payload["corroborated"] is True


def test_build_construction_roundtrip(capsys):
    code, payload, _ = run_json(
        capsys,
        "build-construction",
        "--p",
        "2",
        "--q",
        "3",
        "--f",
        "n^2",
        "--sn",
        "3,5",
        "--depth",
        "4",
    )
    assert code == 0
    assert payload["inequality"][0] == {"n": 1, "lhs": "25", "rhs": "14"}
    from puiseux.monoids import spec_from_json, spec_to_json

    assert spec_to_json(spec_from_json(payload["spec"])) == payload["spec"]


def test_build_construction_violation_exits_two(capsys):
    code, out, err = run(
        capsys,
        "build-construction",
        "--p",
        "2",
        "--q",
        "3",
        "--f",
        "n",
        "--sn",
        "3,5",
        "--depth",
        "4",
    )
    assert code == 2 and "n=1" in err


def test_hom_and_transfer_commands(capsys):
    code, payload, _ = run_json(
        capsys,
        "hom-check",
        "--q",
        "1/2",
        "--domain",
        '{"kind":"finite","generators":["2","3"]}',
        "--codomain",
        '{"kind":"finite","generators":["1","3/2"]}',
    )
    assert code == 0 and payload["status"] == "valid"

    code, payload, _ = run_json(
        capsys,
        "transfer-check",
        "--q",
        "1/2",
        "--domain",
        '{"kind":"finite","generators":["2","3"]}',
        "--codomain",
        '{"kind":"finite","generators":["1","3/2"]}',
    )
    assert code == 0 and payload["verdict"] == "true"

    code, payload, _ = run_json(
        capsys,
        "transfer-verify",
        "--q",
        "1/2",
        "--domain",
        '{"kind":"finite","generators":["2","3"]}',
        "--codomain",
        '{"kind":"finite","generators":["1","3/2"]}',
        "--samples",
        "6,5",
    )
    assert code == 0 and payload["allOk"] is True


def test_aut_search_command(capsys):
    code, payload, _ = run_json(
        capsys,
        "aut-search",
        "--spec",
        '{"kind":"geometric","ratio":"3/2","biinfinite":true}',
        "--window",
        "2",
    )
    assert code == 0
    assert payload["multipliers"] == ["4/9", "2/3", "1", "3/2", "9/4"]


def test_block_commands(capsys):
    code, payload, _ = run_json(capsys, "davenport", "--group", '{"orders":[3]}')
    assert code == 0 and payload["davenport"] == 3

    code, payload, _ = run_json(
        capsys, "block-atoms", "--group", '{"orders":[3]}', "--g0", "[1]"
    )
    assert code == 0 and payload["count"] == 1

    code, payload, _ = run_json(
        capsys, "block-factor", "--group", '{"orders":[3]}', "--x", "[1,1,1,2,2,2]"
    )
    assert code == 0 and payload["lengths"] == [2, 3]


def test_gcd_lemma_command(capsys):
    code, payload, _ = run_json(capsys, "gcd-lemma", "--terms", "4,6,9,21")
    assert code == 0 and payload == {"m": 3, "stabilizingTerm": 21}


def test_gcd_lemma_cap_exits_three(capsys):
    code, out, err = run(capsys, "gcd-lemma", "--terms", "5,3", "--cap", "1")
    assert code == 3 and "unknown" in err


def test_text_output_is_flat_and_deterministic(capsys):
    argv = ["frobenius", "--spec", '{"kind":"numerical","generators":[3,5]}']
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2 == "frobenius: 7\n"


def test_json_output_deterministic(capsys):
    argv = [
        "member",
        "--spec",
        '{"kind":"finite","generators":["3/2","5/2"]}',
        "--x",
        "4",
        "--json",
    ]
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_report_command(tmp_path, capsys):
    outdir = tmp_path / "report"
    code, payload, _ = run_json(
        capsys,
        "report",
        "--spec",
        '{"kind":"finite","generators":["2","3"]}',
        "--bound",
        "12",
        "--out",
        str(outdir),
    )
    assert code == 0
    assert (outdir / "profile.csv").exists()
    assert (outdir / "lengths.png").exists()
    assert (outdir / "elasticity.png").exists()
    header, first = (outdir / "profile.csv").read_text().splitlines()[:2]
    assert header == "x,factorizations,min_length,max_length,elasticity"
    assert first == "2,1,1,1,1"
