import io

import orjson
import pytest

from qshuffle import create_app
from qshuffle.enums import ExitStatus


class Runner:
    def __init__(self, settings):
        self.settings = settings

    def __call__(self, *argv: str) -> tuple[int, str, str]:
        stdout, stderr = io.StringIO(), io.StringIO()
        app = create_app(self.settings)
        app.stdout, app.stderr = stdout, stderr
        status = app.run(list(argv))
        return status, stdout.getvalue().strip(), stderr.getvalue()


@pytest.fixture
def run(settings):
    return Runner(settings)


class TestProducts:
    def test_star(self, run):
        assert run("prod", "--op", "star", "z1", "z1") == (0, "2*z1 z1 + z2", "")

    def test_default_is_qsh(self, run):
        status, out, _ = run("prod", "z2", "z1")
        assert out == "z1 z2 + z2 z1 + z3"

    def test_many_operands(self, run):
        status, out, _ = run("prod", "--op", "concat", "z1", "z2 + 1", "z3")
        assert out == "z1 z2 z3 + z1 z3"

    def test_q_alphabet(self, run):
        assert run("prod", "--alphabet", "q", "z1", "z1")[1] == "2*z1 z1 + eps*z1 + z2"

    def test_unknown_op(self, run):
        status, out, err = run("prod", "--op", "cross", "z1", "z1")
        assert status == ExitStatus.USAGE
        assert out == ""
        assert err.startswith("error[10]")

    def test_json(self, run):
        status, out, _ = run("prod", "--format", "json", "--op", "star", "z1", "z1")
        assert status == 0
        body = orjson.loads(out)
        assert body["input"] == "z1 star z1"
        assert body["terms"] == [{"coeff": "2", "word": [[1], [1]]}, {"coeff": "1", "word": [[2]]}]


class TestMaps:
    def test_sigma(self, run):
        assert run("map", "--series", "sigma", "z2 z1")[1] == "z2 z1 + z3"

    def test_pipeline(self, run):
        assert run("map", "--series", "exp T log T", "z2 z1")[1] == "z2 z1 + z3"

    def test_unknown_map(self, run):
        assert run("map", "--series", "cosh", "z1")[0] == ExitStatus.USAGE

    def test_coproduct(self, run):
        assert run("coproduct", "z1 z2")[1] == "z1 z2 ⊗ 1 + z1 ⊗ z2 + 1 ⊗ z1 z2"
        assert run("coproduct", "--reduced", "z1 z2")[1] == "z1 ⊗ z2"

    def test_coproduct_json(self, run):
        body = orjson.loads(run("coproduct", "--reduced", "--format", "json", "z1 z2")[1])
        assert body["terms"] == [{"coeff": "1", "left": [[1]], "right": [[2]]}]

    def test_antipodes(self, run):
        assert run("antipode", "z1 z2")[1] == "z2 z1 + z3"
        assert run("antipode", "--explicit", "z1 z2")[1] == "z2 z1 + z3"
        assert run("antipode", "--which", "qsh-star", "z1 z2")[1] == "z2 z1 - z3"
        assert run("antipode", "--which", "diamond", "z1 z2")[1] == "-z1 z2 + z3"

    def test_explicit_only_for_qsh(self, run):
        assert run("antipode", "--which", "diamond", "--explicit", "z1")[0] == ExitStatus.CONFIG

    def test_derivation(self, run):
        assert run("derivation", "z1 z2 z3")[1] == "z1 z5 + z3 z3"
        assert run("derivation", "--exp", "2", "z1 z2")[1] == "z1 z2 + 2*z3"


class TestIdentities:
    def test_expthm(self, run):
        status, out, _ = run("gf", "--identity", "expthm", "--z", "z2", "--trunc", "5")
        assert status == 0
        assert out == "expthm: ok to order 5 (3 parts)"

    def test_siinv(self, run):
        assert run("gf", "--identity", "siinv", "--s", "0", "--z", "z2", "--trunc", "4")[0] == 0

    def test_frprod(self, run):
        assert run("gf", "--identity", "frprod", "--y", "z1", "--z", "z2; z3", "--trunc", "4")[0] == 0

    def test_with_series(self, run):
        assert run("gf", "--identity", "ihafid", "--z", "z1", "--with-series", "series[1,1/2,1/3]", "--trunc", "3")[0] == 0

    def test_failure(self, run):
        status, out, _ = run("gf", "--identity", "expsum", "--mode", "concat", "--y", "z1", "--z", "z2", "--trunc", "3")
        assert status == ExitStatus.FAILURE
        assert out.splitlines()[0] == "expsum: FAILED at degree 2"

    def test_json_report(self, run):
        status, out, _ = run("gf", "--identity", "dblfrac", "--a", "z1", "--b", "z2", "--format", "json")
        body = orjson.loads(out)
        assert (status, body["name"], body["ok"], body["order"]) == (0, "dblfrac", True, 6)

    def test_missing_parameter(self, run):
        assert run("gf", "--identity", "expthm")[0] == ExitStatus.USAGE

    def test_unknown_identity(self, run):
        assert run("gf", "--identity", "nope", "--z", "z1")[0] == ExitStatus.USAGE


class TestEval:
    def test_harmonic(self, run):
        assert run("eval", "--evaluator", "harmonic:n=2", "z1")[1] == "3/2"
        assert run("eval", "--evaluator", "harmonic:n=2", "--star", "z1 z1")[1] == "7/4"
        assert run("eval", "--evaluator", "harmonic:n=2", "--interp", "r=1", "z1 z1")[1] == "7/4"

    def test_qzeta(self, run):
        assert run("eval", "--evaluator", "qzeta:order=3", "z2")[1] == "q + q^2 - q^3"

    def test_json(self, run):
        body = orjson.loads(run("eval", "--format", "json", "--evaluator", "harmonic:n=3", "z1 z1")[1])
        assert body == {"input": "z1 z1", "kind": "rational", "value": "1"}

    def test_polylog_root_from_alphabet(self, run):
        status, out, _ = run("eval", "--alphabet", "euler:2", "--evaluator", "polylog:cutoff=1000", "z2,0")
        assert status == 0
        assert float(out) == pytest.approx(1.6439345666815615)

    def test_inadmissible(self, run):
        status, _, err = run("eval", "--evaluator", "mzv:cutoff=10", "z1")
        assert status == ExitStatus.FAILURE
        assert err.startswith("error[11]")

    def test_bad_interp(self, run):
        assert run("eval", "--evaluator", "harmonic", "--interp", "s=1", "z1")[0] == ExitStatus.USAGE


class TestCheck:
    @pytest.mark.slow
    def test_hopf_over_q(self, run):
        status, out, _ = run("check", "hopf", "--maxlen", "4", "--alphabet", "q", "--letters", "3")
        assert status == 0
        assert out.startswith("hopf: ok (")

    def test_sum(self, run):
        status, out, _ = run("check", "sum")
        assert status == 0
        assert out.endswith("3 laws)")

    def test_json(self, run):
        body = orjson.loads(run("check", "algebra", "--maxlen", "2", "--letters", "2", "--format", "json")[1])
        assert body["ok"] is True
        assert body["params"]["maxlen"] == 2

    def test_unknown_suite(self, run):
        assert run("check", "nope")[0] == ExitStatus.USAGE

    def test_samples(self, run):
        argv = ("check", "algebra", "--maxlen", "2", "--letters", "2", "--format", "json")
        assert orjson.loads(run(*argv)[1])["params"]["samples"] == 200
        assert orjson.loads(run(*argv, "--samples", "5")[1])["params"]["samples"] == 5
        assert run(*argv, "--samples", "0")[0] == ExitStatus.CONFIG

    @pytest.mark.parametrize(
        "argv",
        [
            ("check", "maps", "--maxlen", "2", "--letters", "3", "--samples", "4", "--seed", "11", "--format", "json"),
            ("gf", "--identity", "siinv", "--s", "1/2", "--z", "z2; z1", "--trunc", "4", "--format", "json"),
        ],
    )
    def test_output_is_reproducible(self, run, argv):
        first, second = run(*argv), run(*argv)
        assert first[0] == ExitStatus.OK
        assert first[1].encode() == second[1].encode()


class TestErrors:
    def test_parse_error_points_at_offset(self, run):
        status, out, err = run("prod", "z1 +", "z2")
        assert status == ExitStatus.USAGE
        lines = err.splitlines()
        assert lines[0].startswith("error[12]")
        assert lines[1] == "  z1 +"
        assert lines[2] == "      ^"

    def test_json_error(self, run):
        status, _, err = run("prod", "--format", "json", "z0")
        assert status == ExitStatus.USAGE
        assert orjson.loads(err)["code"] == 12

    @pytest.mark.parametrize(
        "argv",
        [
            ("prod", "--alphabet", "euler:1", "z1"),
            ("prod", "--alphabet", "w", "z1"),
            ("prod", "--alphabet", "q", "--coeff", "rational", "z1"),
            ("gf", "--identity", "expthm", "--z", "z1", "--trunc", "0"),
        ],
    )
    def test_config_errors(self, run, argv):
        assert run(*argv)[0] == ExitStatus.CONFIG

    def test_usage(self, run):
        assert run("frobnicate")[0] == ExitStatus.USAGE
        assert run()[0] == ExitStatus.USAGE

    def test_version(self, run):
        assert run("--version")[0] == ExitStatus.OK

    def test_euler_letter_over_z(self, run):
        assert run("prod", "z1,1")[0] == ExitStatus.USAGE
