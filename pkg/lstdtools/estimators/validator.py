import logging
import math


class Validator:
    def __init__(self, value, value_name):
        self.value = value
        self.value_name = value_name

    def check_is_instance(self, instance_type):

        if not isinstance(self.value, instance_type):
            raise TypeError(
                f"The {self.value_name} must be of type {str(instance_type)}, you supplied '{str(type(self.value))}' instead."
            )
        return self

    def check_allowed_value(self, allowed_values: list):
        """
        Checks that value exists in the provided list

        Parameters
        ----------
        allowed_values : list
            The list of allowed values

        Returns
        -------
        Validator
        """

        if self.value not in allowed_values:
            raise ValueError(
                f"The {self.value_name} must be one of {str(allowed_values)}, you supplied '{self.value}' instead."
            )
        return self

    def check_finite(self):
        if not math.isfinite(self.value):
            raise ValueError(
                f"The {self.value_name} must be finite, you supplied '{self.value}' instead."
            )
        return self

    def check_in_range(self, lower, upper):
        """
        Checks that lower <= value <= upper

        Parameters
        ----------
        lower : float
            The smallest allowed value
        upper : float
            The largest allowed value

        Returns
        -------
        Validator
        """

        if not lower <= self.value <= upper:
            raise ValueError(
                f"The {self.value_name} must lie in [{lower}, {upper}], you supplied '{self.value}' instead."
            )
        return self

    def check_positive(self):
        if not self.value > 0:
            raise ValueError(
                f"The {self.value_name} must be strictly positive, you supplied '{self.value}' instead."
            )
        return self

    def check_at_least(self, minimum):
        if self.value < minimum:
            raise ValueError(
                f"The {self.value_name} must be at least {minimum}, you supplied '{self.value}' instead."
            )
        return self

    def check_not_empty(self):
        if len(self.value) == 0:
            raise ValueError(f"The {self.value_name} must not be empty.")
        return self

    def check_strictly_increasing(self):
        """
        Checks that a sequence is sorted with no repeated values

        Returns
        -------
        Validator
        """

        values = list(self.value)
        if any(later <= earlier for earlier, later in zip(values, values[1:])):
            raise ValueError(
                f"The {self.value_name} must be strictly increasing, you supplied {values} instead."
            )
        return self

    def set_default_value_if_none(self, default):
        """
        Sets a default value if the current value is None

        Parameters
        ----------
        default
            The default value

        Returns
        -------
        Validator
        """

        if self.value is None:
            self.value = default
            logging.debug(
                f"The value of {self.value_name} has been updated from None to {default}"
            )
        return self
