import json

import pytest

from bglab.cli import main
from bglab.core import load_algebra


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBuild:
    def test_build_b21(self, tmp_path, capsys):
        path = str(tmp_path / "b21.json")
        code, out, _ = run(capsys, "build", "b21", "-o", path)
        assert code == 0 and "6 elements" in out
        assert load_algebra(path).size == 6

    def test_build_power_semiring_s3(self, tmp_path, capsys):
        path = str(tmp_path / "p.json")
        code, out, _ = run(capsys, "build", "power-semiring", "--group", "S3",
                           "-o", path)
        assert code == 0 and "64 elements" in out

    def test_build_hall_2(self, tmp_path, capsys):
        path = str(tmp_path / "h.json")
        code, out, _ = run(capsys, "build", "hall", "--n", "2", "-o", path)
        assert code == 0 and "7 elements" in out

    def test_build_brandt_and_kadourek(self, tmp_path, capsys):
        code, out, _ = run(capsys, "build", "brandt", "--group", "C2",
                           "--indices", "2", "-o", str(tmp_path / "b.json"))
        assert code == 0 and "9 elements" in out
        code, out, _ = run(capsys, "build", "kadourek", "--n", "2",
                           "--height", "1", "-o", str(tmp_path / "k.json"))
        assert code == 0 and "34 elements" in out

    def test_build_subset_b(self, tmp_path, capsys):
        code, out, _ = run(capsys, "build", "subset-b", "--group", "S3",
                           "--subgroup", "e,(12)", "--element", "(13)",
                           "--with-star", "-o", str(tmp_path / "sb.json"))
        assert code == 0 and "47 elements" in out

    def test_build_rejects_oversized_hall(self, tmp_path, capsys):
        code, _, err = run(capsys, "build", "hall", "--n", "5",
                           "-o", str(tmp_path / "x.json"))
        assert code == 2 and "error" in err

    def test_round_trip_build_analyze_rebuild(self, tmp_path, capsys):
        first = str(tmp_path / "a.json")
        second = str(tmp_path / "b.json")
        run(capsys, "build", "power-semiring", "--group", "S3", "-o", first)
        code, _, _ = run(capsys, "analyze", first)
        assert code == 0
        code, _, _ = run(capsys, "build", "from-meta", "--algebra", first,
                         "-o", second)
        assert code == 0
        with open(first, "rb") as f1, open(second, "rb") as f2:
            assert f1.read() == f2.read()

    def test_gzip_output(self, tmp_path, capsys):
        path = str(tmp_path / "b21.json.gz")
        code, _, _ = run(capsys, "build", "b21", "-o", path)
        assert code == 0
        assert load_algebra(path).labels == ("0", "1", "a", "b", "e", "f")

    def test_derived_builds(self, tmp_path, capsys):
        base = str(tmp_path / "b2.json")
        run(capsys, "build", "brandt", "--group", "C1", "--indices", "2",
            "-o", base)
        code, out, _ = run(capsys, "build", "adjoin-identity", "--algebra", base,
                           "-o", str(tmp_path / "b2one.json"))
        assert code == 0 and "6 elements" in out
        code, out, _ = run(capsys, "build", "adjoin-zero", "--algebra", base,
                           "-o", str(tmp_path / "b2zero.json"))
        assert code == 0 and "6 elements" in out
        alg = load_algebra(base)
        ideal = ",".join(str(i) for i in range(alg.size))
        code, out, _ = run(capsys, "build", "rees-quotient", "--algebra", base,
                           "--ideal", ideal, "-o", str(tmp_path / "q.json"))
        assert code == 0 and "1 elements" in out
        code, out, _ = run(capsys, "build", "subalgebra", "--algebra", base,
                           "--seeds", "1", "-o", str(tmp_path / "s.json"))
        assert code == 0 and "1 elements" in out


class TestAnalyze:
    def test_b21_report(self, tmp_path, capsys):
        path = str(tmp_path / "b21.json")
        run(capsys, "build", "b21", "-o", path)
        code, out, _ = run(capsys, "analyze", path)
        assert code == 0
        report = json.loads(out[out.index("{"):])
        assert report["block_group"] is True
        assert report["j_trivial_ES"] is True
        assert (report["h"], report["m"], report["k"]) == (2, 1, 1)
        assert (report["q"], report["r"]) == (4, 5)
        kinds = [step["kind"]["kind"] for step in report["series"]]
        assert kinds == ["group", "brandt", "brandt"]

    def test_group_report(self, tmp_path, capsys):
        path = str(tmp_path / "s3.json")
        run(capsys, "build", "group", "--group", "S3", "-o", path)
        code, out, _ = run(capsys, "analyze", path)
        report = json.loads(out[out.index("{"):])
        assert report["group"] is True
        assert report["solvable"] is True
        assert report["derived_length"] == 2
        assert report["dedekind"] is False

    def test_corrupt_table_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({
            "kind": "semigroup", "size": 2, "labels": ["p", "q"],
            "mul": [[0, 1], [1, 1]], "meta": {},
        }))
        # table is a valid magma but not associative? [[0,1],[1,1]]:
        # (q q) q = q, q (q q) = q ... make it non-associative explicitly
        path.write_text(json.dumps({
            "kind": "semigroup", "size": 2, "labels": ["p", "q"],
            "mul": [[1, 0], [0, 0]], "meta": {},
        }))
        code, _, err = run(capsys, "analyze", str(path))
        assert code == 2 and "mul-associative" in err


class TestWords:
    def test_v_word_text(self, capsys):
        code, out, _ = run(capsys, "words", "v", "--n", "1", "--m", "1",
                           "--height", "1")
        assert code == 0 and out.strip() == "x1 x2 x1 x2"

    def test_u_word_text(self, capsys):
        code, out, _ = run(capsys, "words", "u", "--n", "2", "--k", "1",
                           "--m", "1")
        assert code == 0 and out.strip() == "x1 x2 x3 x2 x1 x3"

    def test_w_word_json(self, capsys):
        code, out, _ = run(capsys, "words", "w", "--n", "2", "--height", "1",
                           "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["alphabet"] == ["x1", "x2"]
        assert payload["letters"][2] == {"indices": [1], "exp": -1}

    def test_budget_error_exits_2(self, capsys):
        code, _, err = run(capsys, "words", "v", "--n", "2", "--m", "4",
                           "--height", "5")
        assert code == 2 and "error" in err


class TestCheck:
    @pytest.fixture()
    def b21_path(self, tmp_path, capsys):
        path = str(tmp_path / "b21.json")
        run(capsys, "build", "b21", "-o", path)
        return path

    def test_exhaustive_holds_exit_0(self, b21_path, capsys):
        code, out, _ = run(capsys, "check", "--algebra", b21_path,
                           "--identity", "x1^2 = x1^4")
        assert code == 0
        assert json.loads(out)["status"] == "holds"

    def test_counterexample_exit_1(self, b21_path, capsys):
        code, out, _ = run(capsys, "check", "--algebra", b21_path,
                           "--identity", "x1 x2 = x2 x1")
        assert code == 1
        payload = json.loads(out)
        assert payload["witness"] == {"x1": "a", "x2": "b"}

    def test_budget_exit_2(self, b21_path, capsys):
        code, out, _ = run(capsys, "check", "--algebra", b21_path,
                           "--identity", "x1 x2 x3 = x3 x2 x1",
                           "--budget", "10")
        assert code == 2
        assert json.loads(out)["status"] == "budget_exceeded"

    def test_family_shorthand_sampled(self, b21_path, capsys):
        code, out, _ = run(capsys, "check", "--algebra", b21_path,
                           "--identity", "v[2,4,5] = v[2,4,5]^2",
                           "--mode", "sampled", "--samples", "500",
                           "--seed", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "no_counterexample_found"
        assert payload["seed"] == 1

    def test_block_mode(self, tmp_path, capsys):
        path = str(tmp_path / "b2.json")
        run(capsys, "build", "brandt", "--group", "C1", "--indices", "2",
            "-o", path)
        code, out, _ = run(capsys, "check", "--algebra", path,
                           "--identity", "v[2,2,3] = v[2,2,3]^2",
                           "--mode", "block")
        assert code == 0
        assert json.loads(out)["status"] == "holds"

    def test_domain_restriction_file(self, b21_path, tmp_path, capsys):
        dom = tmp_path / "units.json"
        dom.write_text(json.dumps(["1", "0"]))
        code, out, _ = run(capsys, "check", "--algebra", b21_path,
                           "--identity", "x1 x2 = x2 x1",
                           "--domain", f"x1={dom}")
        assert code == 0


class TestVerifySuite:
    def test_quick_profile_passes(self, tmp_path, capsys):
        report_path = str(tmp_path / "report.json")
        code, out, _ = run(capsys, "verify-suite", "--profile", "quick",
                           "-o", report_path)
        assert code == 0
        assert "suite: PASS" in out
        with open(report_path) as fh:
            report = json.load(fh)
        assert report["pass"] is True
        by_id = {c["id"]: c for c in report["checks"]}
        # the impossible star check is recorded, failing, non-mandatory
        assert by_id["a08b-hall-star"]["status"] == "fail"
        assert by_id["a08b-hall-star"]["mandatory"] is False
        mandatory = [c for c in report["checks"] if c["mandatory"]]
        assert all(c["status"] == "pass" for c in mandatory)
        assert len(mandatory) == 11
