import csv
import io
import json
import os
import tempfile
import unittest

import part9_cli
import run as entrypoint
from part0_arith import parse_cycnum
from part8_catalog import constituent_series, find_quotient, load_entry
from part9_cli import EXIT_BAD_INPUT, EXIT_OK, UsageError, parse_exponents


def invoke(*argv):
    with part9_cli.console.capture() as cap:
        code = part9_cli.run(["--threads", "1", *argv])
    return code, cap.get()


class TestArguments(unittest.TestCase):
    def test_parse_exponents(self):
        self.assertEqual(parse_exponents("24:1,8:-2"), {24: 1, 8: -2})
        self.assertEqual(parse_exponents('{"24": 1, "8": -2}'), {24: 1, 8: -2})
        self.assertEqual(parse_exponents("1:1, 1:1"), {1: 2})
        with self.assertRaises(UsageError):
            parse_exponents("24")

    def test_bad_flag(self):
        self.assertEqual(invoke("expand", "--bogus")[0], EXIT_BAD_INPUT)
        self.assertEqual(invoke("frobenius", "--pmax", "0", "--poly", "x")[0], EXIT_BAD_INPUT)
        self.assertEqual(invoke()[0], EXIT_BAD_INPUT)

    def test_help(self):
        self.assertEqual(part9_cli.run(["--help"]), EXIT_OK)

    def test_unknown_form(self):
        self.assertEqual(invoke("verify", "--form", "F7")[0], EXIT_BAD_INPUT)
        self.assertEqual(invoke("expand", "--form", "F7", "--prec", "5")[0], EXIT_BAD_INPUT)
        self.assertEqual(invoke("classify", "--form", "F7")[0], EXIT_BAD_INPUT)


class TestExpand(unittest.TestCase):
    def test_quotient(self):
        code, out = invoke("expand", "--quotient", "f1_1152", "--prec", "50")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "scale=24 prec=50\n24: 1\n")

    def test_exponents(self):
        code, out = invoke("expand", "--exponents", "1:1", "--prec", "30")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines(), ["scale=24 prec=30", "1: 1", "25: -1"])

    def test_form(self):
        code, out = invoke("expand", "--form", "F1152", "--prec", "20")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "scale=1 prec=20")
        self.assertEqual(lines[1], "1: 1")
        self.assertIn("17: 2", lines)

    def test_bad_level(self):
        code, _ = invoke("expand", "--exponents", "4:1", "--level", "6", "--prec", "10")
        self.assertEqual(code, EXIT_BAD_INPUT)


class TestHecke(unittest.TestCase):
    def test_quotient_identity(self):
        code, out = invoke("hecke", "--quotient", "f1_1152", "--level", "1152", "--disc", "-8",
                           "--prime", "17", "--prec", str(17 * 59 + 1))
        self.assertEqual(code, EXIT_OK)
        entry, f2 = find_quotient("f2_1152")
        self.assertEqual(out, constituent_series(entry, f2, 60).scalar_mul(4).dump())

    def test_series_file(self):
        entry, f1 = find_quotient("f1_1152")
        dump = constituent_series(entry, f1, 17 * 59 + 1).dump()
        expected = invoke("hecke", "--quotient", "f1_1152", "--level", "1152", "--disc", "-8",
                          "--prime", "17", "--prec", str(17 * 59 + 1))[1]
        fd, path = tempfile.mkstemp(suffix=".txt")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(dump)
            code, out = invoke("hecke", "--series", path, "--level", "1152", "--disc", "-8", "--prime", "17")
        finally:
            os.remove(path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, expected)

    def test_prime_divides_level(self):
        code, _ = invoke("hecke", "--quotient", "f1_1152", "--level", "1152", "--disc", "-8", "--prime", "2")
        self.assertEqual(code, EXIT_BAD_INPUT)


class TestTables(unittest.TestCase):
    def test_frobenius(self):
        code, out = invoke("frobenius", "--poly", "x^2 + 1", "--pmax", "13")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines(), [
            "p,f_p,split_type",
            "2,RAMIFIED,RAMIFIED",
            "3,2,2",
            "5,1,1+1",
            "7,2,2",
            "11,2,2",
            "13,1,1+1",
        ])

    def test_splitting_table(self):
        code, out = invoke("splitting-table", "--form", "F576", "--pmax", "50")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "p,a_p,f_p,splits_into,ramified_flag")
        self.assertEqual(lines[1], "2,,,,1")
        self.assertEqual(lines[2], "3,,,,1")
        self.assertEqual(len(lines), 1 + 15)
        rows = list(csv.reader(io.StringIO(out)))[3:]
        allowed = load_entry("F576").merged_rows()
        for p, a_p, f_p, splits, flag in rows:
            self.assertEqual(flag, "0")
            self.assertTrue(a_p.startswith("(") and a_p.count("/") == 4, a_p)
            self.assertIn((parse_cycnum(a_p), int(f_p)), allowed, p)
            self.assertEqual(int(f_p) * int(splits), 48)
        self.assertEqual(invoke("splitting-table", "--form", "F576", "--pmax", "50")[1], out)

    def test_splitting_table_index_divisor(self):
        # 17 divides the discriminant of the F1152 polynomial but not the level
        code, out = invoke("splitting-table", "--form", "F1152", "--pmax", "17")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines()[-1], '17,"(2/1, 0/1, 0/1, 0/1)",1,8,0')

    def test_catalog(self):
        code, out = invoke("catalog", "--json")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual([e["name"] for e in data], ["F576", "F1080", "F1152", "F5760", "F9216", "F23040"])
        self.assertEqual(data[0]["character"], -24)
        code, out = invoke("catalog")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("F23040", out)


class TestVerifyAndClassify(unittest.TestCase):
    def test_verify_json(self):
        code, out = invoke("verify", "--form", "F576", "--pmax", "10000")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report["status"], "PASS")
        self.assertEqual(report["mismatches"], [])
        self.assertEqual(report["checked_upto"], 96)
        again = invoke("verify", "--form", "F576", "--pmax", "10000")[1]
        self.assertEqual(out, again)

    def test_verify_table(self):
        code, out = invoke("verify", "--form", "F1152", "--pmax", "10000", "--table")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("F1152: PASS", out)

    def test_verify_below_sturm(self):
        self.assertEqual(invoke("verify", "--form", "F576", "--pmax", "50")[0], EXIT_BAD_INPUT)

    def test_classify(self):
        code, out = invoke("classify", "--form", "F1152", "--pmax", "10000")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["verdict"], "DIHEDRAL")
        self.assertEqual(data["expected"], "DIHEDRAL")
        self.assertIsNone(data["distance"])


class TestEntrypoint(unittest.TestCase):
    def test_main(self):
        with part9_cli.console.capture():
            with self.assertRaises(SystemExit) as ctx:
                entrypoint.main(["--threads", "1", "catalog", "--json"])
        self.assertEqual(ctx.exception.code, 0)


if __name__ == "__main__":
    unittest.main()
