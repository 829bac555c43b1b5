import json

import pytest
from click.testing import CliRunner

from sepcat import presets
from sepcat import interchange as io
from sepcat.cli import main
from sepcat.exactalg import Field, QQ
from sepcat.lincat import linearize
from sepcat.cmod import canonical_bimodule, representable_left_module


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def files(tmp_path):
    paths = {}

    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc, indent=2))
        paths[name] = str(p)
        return str(p)

    write("z2_over_Q.json", io.category_to_json(linearize(presets.cyclic_group(2), QQ)))
    write("z2_over_F2.json", io.category_to_json(linearize(presets.cyclic_group(2), Field(2))))
    write("a2_over_Q.json", io.category_to_json(linearize(presets.chain_poset(2), QQ)))
    write("z2_pres.json", io.presentation_to_json(presets.cyclic_group(2)))
    write("a2_pres.json", io.presentation_to_json(presets.chain_poset(2)))
    write("d2_pres.json", io.presentation_to_json(presets.discrete_category(2)))
    paths["tmp"] = str(tmp_path)
    return paths


def invoke(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False, standalone_mode=False)
    return result


class TestSeparabilityCommands:
    def test_check_separable(self, runner, files, tmp_path):
        out = str(tmp_path / "cert.json")
        result = runner.invoke(main, ["separability", "check", files["z2_over_Q.json"], "--certificate-out", out])
        assert result.exit_code == 0
        assert "separable: yes" in result.output
        cert = json.loads((tmp_path / "cert.json").read_text())
        assert cert[0]["terms"][0]["coeff"] == "1/2"

    def test_check_not_separable(self, runner, files):
        result = runner.invoke(main, ["separability", "check", files["a2_over_Q.json"]])
        assert result.exit_code == 1

    def test_verify_accepts_emitted_certificate(self, runner, files, tmp_path):
        out = str(tmp_path / "cert.json")
        runner.invoke(main, ["separability", "check", files["z2_over_Q.json"], "--certificate-out", out])
        result = runner.invoke(main, ["separability", "verify", files["z2_over_Q.json"], "--certificate", out])
        assert result.exit_code == 0

    def test_verify_reports_residuals(self, runner, files, tmp_path):
        bad = tmp_path / "bad_cert.json"
        bad.write_text(json.dumps([{"x": "x", "y": "x", "terms": [{"coeff": "1", "u": "g0", "v": "g0"}]}]))
        result = runner.invoke(main, ["separability", "verify", files["z2_over_Q.json"], "--certificate", str(bad)])
        assert result.exit_code == 1
        assert "equivariance residual" in result.output


class TestPredicateCommands:
    def test_maschke_separable(self, runner, files):
        result = runner.invoke(main, ["maschke", files["z2_pres.json"], "--field", "Q"])
        assert result.exit_code == 0

    def test_maschke_obstructed(self, runner, files):
        result = runner.invoke(main, ["maschke", files["z2_pres.json"], "--field", "Fp:2"])
        assert result.exit_code == 1
        assert "not invertible" in result.output

    def test_maschke_rejects_non_groupoid(self, runner, files):
        result = runner.invoke(main, ["maschke", files["a2_pres.json"], "--field", "Q"])
        assert result.exit_code == 2

    def test_delta_discrete(self, runner, files):
        result = runner.invoke(main, ["delta", files["d2_pres.json"]])
        assert result.exit_code == 0

    def test_delta_chain(self, runner, files):
        result = runner.invoke(main, ["delta", files["a2_pres.json"]])
        assert result.exit_code == 1


class TestCohomologyCommands:
    def test_cohomology_modular_group_algebra(self, runner, files):
        result = runner.invoke(
            main, ["cohomology", files["z2_over_F2.json"], "--bimodule", "canonical", "--max-degree", "1"]
        )
        assert result.exit_code == 0
        lines = [l for l in result.output.splitlines() if l.startswith("1")]
        assert lines and lines[0].split()[-1] == "2"

    def test_cohomology_budget_exit(self, runner, files, monkeypatch):
        from sepcat.cohomology import build_hm_complex as original

        monkeypatch.setattr("sepcat.cli.build_hm_complex", lambda c, m, d: original(c, m, d, budget=2))
        result = runner.invoke(main, ["cohomology", files["z2_over_Q.json"], "--bimodule", "canonical"])
        assert result.exit_code == 3

    def test_obstruction_exit_codes(self, runner, files):
        assert runner.invoke(main, ["obstruction", files["z2_over_Q.json"]]).exit_code == 0
        assert runner.invoke(main, ["obstruction", files["a2_over_Q.json"]]).exit_code == 1

    def test_les_kernel_comp(self, runner, files):
        result = runner.invoke(main, ["les", files["z2_over_Q.json"], "--ses", "kernel-comp", "--max-degree", "1"])
        assert result.exit_code == 0
        assert "NO" not in result.output


class TestModuleCommands:
    def test_module_split(self, runner, files, tmp_path):
        cert = str(tmp_path / "cert.json")
        runner.invoke(main, ["separability", "check", files["z2_over_Q.json"], "--certificate-out", cert])
        c = linearize(presets.cyclic_group(2), QQ)
        mod = tmp_path / "regular.json"
        mod.write_text(json.dumps(io.left_module_to_json(representable_left_module(c, "x"))))
        result = runner.invoke(
            main,
            ["module", "split", files["z2_over_Q.json"], "--module", str(mod), "--certificate", cert],
        )
        assert result.exit_code == 0
        assert "section_ok: yes" in result.output

    def test_zelinsky(self, runner, files, tmp_path):
        cert = str(tmp_path / "cert.json")
        runner.invoke(main, ["separability", "check", files["z2_over_Q.json"], "--certificate-out", cert])
        result = runner.invoke(main, ["zelinsky", files["z2_over_Q.json"], "--certificate", cert])
        assert result.exit_code == 0
        assert "yes" in result.output


class TestValidateAndLinearize:
    def test_validate_category(self, runner, files):
        assert runner.invoke(main, ["validate", files["z2_over_Q.json"]]).exit_code == 0

    def test_validate_bimodule_needs_category(self, runner, files, tmp_path):
        c = linearize(presets.cyclic_group(2), QQ)
        mod = tmp_path / "canonical.json"
        mod.write_text(json.dumps(io.bimodule_to_json(canonical_bimodule(c))))
        result = runner.invoke(main, ["validate", str(mod)])
        assert result.exit_code == 2
        result = runner.invoke(main, ["validate", str(mod), "--category", files["z2_over_Q.json"]])
        assert result.exit_code == 0

    def test_linearize_round_trip(self, runner, files, tmp_path):
        out = str(tmp_path / "z2f3.json")
        result = runner.invoke(main, ["linearize", files["z2_pres.json"], "--field", "Fp:3", "-o", out])
        assert result.exit_code == 0
        c = io.category_from_json(json.loads((tmp_path / "z2f3.json").read_text()))
        assert c.field == Field(3)

    def test_malformed_json_is_exit_two(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        result = runner.invoke(main, ["validate", str(bad)])
        assert result.exit_code == 2

    def test_unknown_flag_rejected(self, runner, files):
        result = runner.invoke(main, ["obstruction", files["z2_over_Q.json"], "--frobnicate"])
        assert result.exit_code == 2


class TestDeterminism:
    def test_artifacts_are_byte_identical(self, runner, files, tmp_path):
        pairs = []
        for run in (1, 2):
            cert = tmp_path / f"cert{run}.json"
            coh = tmp_path / f"coh{run}.json"
            lin = tmp_path / f"lin{run}.json"
            les = tmp_path / f"les{run}.json"
            r1 = runner.invoke(main, ["separability", "check", files["z2_over_Q.json"], "--certificate-out", str(cert)])
            r2 = runner.invoke(main, ["cohomology", files["z2_over_F2.json"], "--bimodule", "canonical",
                                      "--max-degree", "2", "--json-out", str(coh)])
            r3 = runner.invoke(main, ["linearize", files["z2_pres.json"], "--field", "Q", "-o", str(lin)])
            r4 = runner.invoke(main, ["les", files["a2_over_Q.json"], "--ses", "kernel-comp",
                                      "--max-degree", "1", "--json-out", str(les)])
            pairs.append((cert.read_bytes(), coh.read_bytes(), lin.read_bytes(), les.read_bytes(),
                          r1.output, r2.output, r3.output, r4.output))
        assert pairs[0] == pairs[1]
