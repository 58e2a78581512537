import logging
import os
import shutil
import tempfile
import unittest

from parameterized import parameterized

from lstdtools import logger
from lstdtools.logger.LstdLogger import LOG_LEVELS


class LoggerTests(unittest.TestCase):
    def tearDown(self):
        logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))

    @parameterized.expand([(name, name, level) for name, level in LOG_LEVELS.items()])
    def test_sets_root_level(self, _, name, level):
        logger.LstdLogger(name)
        self.assertEqual(level, logging.getLogger().level)

    def test_empty_level_means_info(self):
        logger.LstdLogger("")
        self.assertEqual(logging.INFO, logging.getLogger().level)

    def test_unknown_level_names_valid_levels(self):
        with self.assertRaises(ValueError) as context:
            logger.LstdLogger("verbose")
        self.assertIn("verbose", str(context.exception))
        self.assertIn("warning", str(context.exception))

    def test_logging_file_accepted(self):
        folder = tempfile.mkdtemp()
        try:
            logger.LstdLogger("debug", os.path.join(folder, "lstd.log"))
            self.assertEqual(logging.DEBUG, logging.getLogger().level)
        finally:
            shutil.rmtree(folder, ignore_errors=True)
