import io
import os
import tempfile
import unittest
from contextlib import redirect_stderr

import app
from app import RunConfig, build_parser, config_from_args, run
from field_manager import get_field
from handler.linalg_handler import read_matrix
import pages.codes
import pages.curve
import pages.gv_compare
import pages.lattice
import pages.verify
from pages.codes import parse_sweep


def invoke(*argv: str) -> tuple[int, str, str]:
    config = config_from_args(build_parser().parse_args(list(argv)))
    out, err = io.StringIO(), io.StringIO()
    with redirect_stderr(err):
        status = run(config, stdout=out)
    return status, out.getvalue(), err.getvalue()


class TestCommands(unittest.TestCase):

    def test_params(self):
        status, out, _ = invoke("params", "--q", "2", "--c", "5")
        self.assertEqual(status, 0)
        self.assertEqual(out.splitlines()[0], "a=3 b=2 g=75 n=496 v0=155 A=278 B=92")

    def test_params_rejects_p_dividing_a(self):
        status, out, err = invoke("params", "--q", "2", "--c", "3")
        self.assertEqual(status, 2)
        self.assertEqual(out, "")
        self.assertIn("p ∤ a", err)

    def test_points(self):
        status, out, _ = invoke("points", "--q", "3", "--c", "3")
        lines = out.splitlines()
        self.assertEqual(status, 0)
        self.assertEqual(lines[0], "alpha,beta")
        self.assertEqual(len(lines), 235)

    def test_omega(self):
        _, out, _ = invoke("omega", "--q", "3", "--c", "3")
        self.assertEqual(out, "i,j,k\n0,0,0\n")
        _, out, _ = invoke("omega", "--q", "3", "--c", "3", "--v", "100", "--prime")
        self.assertEqual(len(out.splitlines()), 65)

    def test_code_summary_and_matrix_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "g.txt")
            status, out, _ = invoke("code", "--q", "3", "--c", "3", "--v", "100", "--out", path)
            self.assertEqual(status, 0)
            self.assertEqual(out, "234 64 134 100\n")
            with open(path, encoding="utf-8") as fh:
                mat = read_matrix(fh, get_field(3, 1, 3))
            self.assertEqual(mat.shape, (64, 234))

    def test_code_checks(self):
        status, out, _ = invoke("code", "--q", "3", "--c", "3", "--check-dual", "--min-dist")
        self.assertEqual(status, 0)
        self.assertEqual(out.splitlines(), ["234 1 234 0", "dual -1 -1 259 25 PASS", "d=234"])

    def test_min_dist_over_budget_reports_bound(self):
        _, out, _ = invoke("code", "--q", "3", "--c", "3", "--v", "60", "--min-dist", "--budget", "100")
        self.assertEqual(out.splitlines()[-1], "d>=174")

    def test_min_dist_of_zero_code(self):
        status, out, _ = invoke("code", "--q", "3", "--c", "3", "--v", "-1", "--min-dist")
        self.assertEqual(status, 0)
        self.assertEqual(out.splitlines(), ["234 0 235 -1", "d=undefined"])

    def test_dual(self):
        status, out, _ = invoke("dual", "--q", "2", "--c", "5", "--v", "324")
        self.assertEqual((status, out), (0, "-325 -1 278 92\n"))
        status, out, _ = invoke("dual", "--q", "3", "--c", "3", "--v", "100", "--check")
        self.assertEqual((status, out), (0, "-101 -1 259 25\nPASS\n"))

    def test_table(self):
        _, out, _ = invoke("table", "--q", "3", "--c", "3", "--sweep", "0:20:10")
        lines = out.splitlines()
        self.assertEqual(lines[0], "v,r,s,t,degG,k,goppa_lb,dual_v,dual_r,dual_s,dual_t")
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[1], "0,0,0,0,0,1,234,-1,-1,259,25")

    def test_gv_compare(self):
        status, out, _ = invoke("gv-compare", "--q", "2", "--c", "5", "--sweep", "324:324:1")
        lines = out.splitlines()
        self.assertEqual(status, 0)
        self.assertEqual(lines[0], "degG,k,goppa_lb,delta,rate,gv_rate,beats_gv")
        self.assertTrue(lines[1].startswith("324,250,172,"))
        self.assertTrue(lines[1].endswith(",True"))

    def test_bad_sweep_is_usage_error(self):
        status, _, err = invoke("table", "--q", "3", "--c", "3", "--sweep", "5:1:1")
        self.assertEqual(status, 2)
        self.assertIn("empty", err)

    def test_verify_quick(self):
        status, out, _ = invoke("verify", "--q", "3", "--c", "3", "--seed", "7", "--quick")
        self.assertEqual(status, 0)
        self.assertTrue(all(line.endswith(",PASS") for line in out.splitlines()[1:]))

    def test_deterministic_output(self):
        argv = ("gv-compare", "--q", "3", "--c", "3", "--sweep", "0:300:25")
        self.assertEqual(invoke(*argv), invoke(*argv))


class TestConfig(unittest.TestCase):

    def test_parse_sweep(self):
        self.assertEqual(list(parse_sweep("0:10:5")), [0, 5, 10])
        for bad in ("1:2", "a:b:c", "0:10:0"):
            with self.assertRaises(ValueError):
                parse_sweep(bad)

    def test_config_fields(self):
        config = config_from_args(build_parser().parse_args(
            ["code", "--q", "2", "--c", "5", "--v", "324", "-vv", "--check-dual"]))
        self.assertEqual(config.spec.as_tuple(), (324, 0, 0, 0))
        self.assertEqual(config.verbose, 2)
        self.assertTrue(config.check_dual)
        self.assertIsInstance(config, RunConfig)

    def test_command_tables_match_parser(self):
        parser = build_parser()
        sub = next(a for a in parser._actions if a.dest == "command")
        self.assertEqual(set(sub.choices), set(app.COMMANDS))
        self.assertLessEqual(app.SWEEP_COMMANDS, set(app.COMMANDS))
        self.assertFalse(hasattr(app, "SPEC_COMMANDS"))

    def test_page_docstrings_share_title_style(self):
        for mod in (pages.codes, pages.curve, pages.gv_compare, pages.lattice, pages.verify):
            title = mod.__doc__.strip().splitlines()[0]
            self.assertFalse(title[0].isascii(), mod.__name__)
            self.assertIn(" – ", title, mod.__name__)

    def test_argparse_usage_exit_code(self):
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                build_parser().parse_args(["code", "--c", "5"])
        self.assertEqual(ctx.exception.code, 2)

    def test_out_redirects_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "pts.csv")
            status, out, _ = invoke("points", "--q", "3", "--c", "3", "--out", path)
            self.assertEqual((status, out), (0, ""))
            with open(path, encoding="utf-8") as fh:
                self.assertEqual(fh.readline(), "alpha,beta\n")


if __name__ == "__main__":
    unittest.main()
