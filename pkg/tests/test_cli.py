import json
import logging

import pytest

import pgx
from app.config import settings


@pytest.fixture(autouse=True)
def detach_cli_handler():
    yield
    root = logging.getLogger()
    for handler in [h for h in root.handlers if h.get_name() == "pgx"]:
        root.removeHandler(handler)


def run(capsys, *argv):
    code = pgx.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSpectrumCommand:
    def test_pgl2_9(self, capsys):
        code, out, _ = run(capsys, "spectrum", "pgl2(9)")
        assert code == 0
        assert out == '{"order":720,"element_orders":[1,2,3,4,5,8,10],"mu":[3,8,10]}\n'

    def test_trivial_permutation_group(self, capsys):
        code, out, _ = run(capsys, "spectrum", "perm(1;)")
        assert code == 0
        assert out == '{"order":1,"element_orders":[1],"mu":[1]}\n'

    def test_output_is_stable(self, capsys):
        first = run(capsys, "spectrum", "paper.g3")
        second = run(capsys, "spectrum", "paper.g3")
        assert first[1] == second[1]
        assert json.loads(first[1])["element_orders"] == [1, 2, 3, 5, 10]


class TestGraphCommand:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "graph", "pgl2(9)")
        assert code == 0
        assert out == '{"vertices":[2,3,5],"edges":[[2,5]]}\n'

    def test_edgeless(self, capsys):
        _, out, _ = run(capsys, "graph", "psl2(9)")
        assert json.loads(out)["edges"] == []

    def test_dot(self, capsys):
        code, out, _ = run(capsys, "graph", "pgl2(9)", "--format", "dot")
        assert code == 0
        assert out == "graph G {\n  2;\n  3;\n  5;\n  2 -- 5;\n}\n"

    def test_dot_empty_graph(self, capsys):
        _, out, _ = run(capsys, "graph", "perm(1;)", "--format", "dot")
        assert out == "graph G { }\n"

    def test_unknown_format(self, capsys):
        code, out, err = run(capsys, "graph", "pgl2(9)", "--format", "svg")
        assert code == 2
        assert out == ""
        assert json.loads(err.splitlines()[-1])["error"] == "InputError"


class TestCompareAndComponents:
    def test_equal_graphs(self, capsys):
        code, out, _ = run(capsys, "compare", "paper.g1", "pgl2(9)")
        document = json.loads(out)
        assert code == 0
        assert document["equal"] is True
        assert document["difference"] == []
        assert document["left"]["descriptor"] == "paper.g1"

    def test_different_graphs(self, capsys):
        code, out, _ = run(capsys, "compare", "sym(5)", "pgl2(9)")
        assert code == 1
        assert json.loads(out)["difference"] == [[2, 3], [2, 5]]

    def test_components(self, capsys):
        code, out, _ = run(capsys, "components", "pgl2(9)")
        assert code == 0
        assert out == '{"components":[[2,5],[3]],"t":2}\n'


class TestVerifyCommand:
    def test_theorem_g3(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem", "paper.g3")
        report = json.loads(out)
        assert code == 0
        assert report["case"] == "Case3"
        assert report["overall"] is True

    def test_theorem_no_match(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem", "alt(5)")
        assert code == 1
        assert json.loads(out)["case"] == "NoMatch"

    def test_frobenius_g1(self, capsys):
        code, out, _ = run(capsys, "verify", "frobenius", "paper.g1")
        report = json.loads(out)
        assert code == 0
        assert all(c["status"] in ("pass", "skip") for c in report["checks"])

    def test_frobenius_with_witness(self, capsys):
        code, out, _ = run(
            capsys, "verify", "frobenius", "alt(4)",
            "--kernel", "(1 2)(3 4), (1 3)(2 4)", "--complement", "(1 2 3)",
        )
        assert code == 0
        assert json.loads(out)["kind"] == "frobenius"

    def test_frobenius_without_witness(self, capsys):
        code, out, _ = run(capsys, "verify", "frobenius", "pgl2(9)")
        assert code == 1
        assert json.loads(out)["checks"][0]["name"] == "witness found"

    def test_frobenius_direct_product_rejected(self, capsys):
        code, out, _ = run(capsys, "verify", "frobenius", "frobfield(3,1,1)")
        assert code == 1
        assert json.loads(out)["overall"] is False

    def test_2frobenius_g1_has_no_series(self, capsys):
        code, out, _ = run(capsys, "verify", "2frobenius", "paper.g1")
        assert code == 1
        assert json.loads(out)["checks"][0]["name"] == "witness found"

    def test_2frobenius_g3(self, capsys):
        code, out, _ = run(capsys, "verify", "2frobenius", "paper.g3")
        assert code == 0
        assert json.loads(out)["notes"] == ["|H|=25, |K/H|=3, |G/K|=2"]

    def test_extension(self, capsys):
        code, _, _ = run(capsys, "verify", "extension", "permmod(5,4; (1 2)(3 4), (1 3)(2 4), (1 2 3))")
        assert code == 0

    def test_kernel_without_complement(self, capsys):
        code, _, _ = run(capsys, "verify", "frobenius", "alt(4)", "--kernel", "(1 2)(3 4)")
        assert code == 2

    def test_malformed_witness(self, capsys):
        code, out, err = run(
            capsys, "verify", "frobenius", "alt(4)",
            "--kernel", "(1 2", "--complement", "(1 2 3)",
        )
        assert code == 2
        assert out == ""
        assert json.loads(err.splitlines()[-1])["error"] == "DescriptorSyntaxError"

    def test_unknown_kind(self, capsys):
        code, _, _ = run(capsys, "verify", "nilpotent", "alt(4)")
        assert code == 2


class TestErrors:
    def test_bad_descriptor(self, capsys):
        code, out, err = run(capsys, "spectrum", "pgl2(9")
        assert code == 2
        assert out == ""
        assert "position 6" in json.loads(err.splitlines()[-1])["message"]

    def test_not_a_prime_power(self, capsys):
        code, _, _ = run(capsys, "spectrum", "pgl2(10)")
        assert code == 2

    def test_cap_exceeded(self, capsys):
        code, out, err = run(capsys, "spectrum", "pgl2(9)", "--cap", "100")
        assert code == 2
        assert out == ""
        assert json.loads(err.splitlines()[-1])["error"] == "CapacityError"

    def test_cap_is_restored(self, capsys):
        before = settings.enumeration_cap
        run(capsys, "spectrum", "alt(4)", "--cap", "50")
        assert settings.enumeration_cap == before

    def test_non_positive_cap(self, capsys):
        code, _, _ = run(capsys, "spectrum", "alt(4)", "--cap", "0")
        assert code == 2

    def test_unknown_command(self, capsys):
        code, _, _ = run(capsys, "explain", "alt(4)")
        assert code == 2

    @pytest.mark.parametrize("argv", [["--version"], ["spectrum", "--help"]])
    def test_help_and_version(self, capsys, argv):
        assert pgx.main(argv) == 0
