import os
import unittest

from parameterized import parameterized

from lstdtools import logger
from lstdtools.estimators.validator import Validator


class ValidatorTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.logger = logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))

    @parameterized.expand(
        [
            ["Value does exist in allowed values", "allstd", "method", ["allstd", "naive-cv"]],
            ["Numeric value", 2, "stream", [0, 1, 2, 3]],
        ]
    )
    def test_check_allowed_value_success(self, _, value, value_name, allowed_values):
        Validator(value, value_name).check_allowed_value(allowed_values)

    @parameterized.expand(
        [
            ["Value does not exist in allowed values", "rlstd", "method", ["allstd", "naive-cv"]],
            ["Empty list of allowed values", "allstd", "method", []],
        ]
    )
    def test_check_allowed_value_exception(self, _, value, value_name, allowed_values):
        with self.assertRaises(ValueError):
            Validator(value, value_name).check_allowed_value(allowed_values)

    @parameterized.expand(
        [
            ["Lower bound", 0.0, True],
            ["Upper bound", 1.0, True],
            ["Inside", 0.5, True],
            ["Below", -0.01, False],
            ["Above", 1.01, False],
        ]
    )
    def test_check_in_range(self, _, value, accepted):
        if accepted:
            self.assertEqual(value, Validator(value, "lambda").check_in_range(0.0, 1.0).value)
        else:
            with self.assertRaises(ValueError):
                Validator(value, "lambda").check_in_range(0.0, 1.0)

    def test_check_positive(self):
        Validator(1e-8, "rho").check_positive()
        with self.assertRaises(ValueError):
            Validator(0.0, "rho").check_positive()

    def test_check_finite(self):
        with self.assertRaises(ValueError):
            Validator(float("nan"), "ridge").check_finite()

    def test_check_strictly_increasing(self):
        Validator([0.0, 0.5, 1.0], "lambda grid").check_strictly_increasing()
        with self.assertRaises(ValueError):
            Validator([0.0, 0.0], "lambda grid").check_strictly_increasing()

    def test_check_not_empty(self):
        with self.assertRaises(ValueError):
            Validator([], "lambda grid").check_not_empty()

    def test_check_is_instance(self):
        with self.assertRaises(TypeError):
            Validator("10", "n").check_is_instance(int)

    @parameterized.expand(
        [
            ["Value is None", None, 20, 20],
            ["Value is set", 5, 20, 5],
        ]
    )
    def test_set_default_value_if_none(self, _, value, default, expected):
        self.assertEqual(
            expected, Validator(value, "horizon").set_default_value_if_none(default).value
        )

    def test_checks_chain(self):
        value = (
            Validator(None, "horizon")
            .set_default_value_if_none(20)
            .check_at_least(1)
            .value
        )
        self.assertEqual(20, value)
