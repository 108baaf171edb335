import os
import unittest
from unittest import mock

import part1_bootstrap


class TestPart1Bootstrap(unittest.TestCase):
    def test_log_and_tail_log(self):
        test_msg = "Test log entry for the verification pipeline"
        part1_bootstrap.log(test_msg)
        log_tail = part1_bootstrap.tail_log(10)
        self.assertIn(test_msg, log_tail)

    def test_log_never_raises(self):
        with mock.patch.object(part1_bootstrap, "LOG_FILE", os.path.join("/nonexistent", "dir", "x.log")):
            part1_bootstrap.log("dropped")
            self.assertEqual(part1_bootstrap.tail_log(5), "")

    def test_default_threads_from_env(self):
        with mock.patch.dict(os.environ, {"ETAFORMS_THREADS": "3"}):
            self.assertEqual(part1_bootstrap.default_threads(), 3)
        with mock.patch.dict(os.environ, {"ETAFORMS_THREADS": "zero"}):
            self.assertGreaterEqual(part1_bootstrap.default_threads(), 1)

    def test_missing_dependencies(self):
        missing = part1_bootstrap.missing_dependencies(["rich", "no_such_module_for_etaforms"])
        self.assertEqual(missing, ["no_such_module_for_etaforms"])
        self.assertEqual(part1_bootstrap.missing_dependencies(), [])

    def test_parallel_map_inline_and_pool(self):
        items = [-3, 1, -4, 1, -5, 9, -2, 6]
        expected = [abs(x) for x in items]
        self.assertEqual(part1_bootstrap.parallel_map(abs, items, threads=1), expected)
        self.assertEqual(part1_bootstrap.parallel_map(abs, items, threads=2), expected)

    def test_catalog_dir_exists(self):
        self.assertTrue(os.path.isdir(part1_bootstrap.CATALOG_DIR))


if __name__ == "__main__":
    unittest.main()
