import functools
import inspect
import json
import logging
import os
import typing
from pathlib import Path

THREADS_ENVIRONMENT_VARIABLE = "ALLSTD_THREADS"


def checkargs(function: typing.Callable) -> typing.Callable:
    """
    This can be used as a decorator to test the type of arguments are correct. It checks that the provided arguments
    match any type annotations and/or the default value for the parameter.

    Parameters
    ----------
    function : typing.Callable
        The function to wrap with annotated types

    Returns
    -------
    _f : typing.Callable
        The wrapped function
    """

    signature = inspect.signature(function)

    @functools.wraps(function)
    def _f(*args, **kwargs):

        function_arguments = signature.parameters

        # Collect each non keyword argument value and key it by the argument name
        keyed_arguments = {
            list(function_arguments.keys())[i]: args[i] for i in range(0, len(args))
        }
        keyed_arguments.update(kwargs)

        for argument_name, argument_value in keyed_arguments.items():

            if argument_name not in function_arguments:
                raise ValueError(
                    f"The argument {argument_name} is not a valid keyword argument for this function, valid arguments"
                    + f" are {str(list(function_arguments.keys()))}"
                )

            argument_details = function_arguments[argument_name]
            annotation = argument_details.annotation

            # Only plain classes are checked, typing constructs are documentation
            if annotation is argument_details.empty or not isinstance(
                annotation, type
            ):
                continue

            is_default_value = (
                argument_details.default is not argument_details.empty
                and argument_value is argument_details.default
            )

            if not isinstance(argument_value, annotation) and not is_default_value:
                raise TypeError(
                    f"The value provided for {argument_name} is of type {type(argument_value)} not of "
                    f"type {annotation}. Please update the provided value to be of type {annotation}"
                )

        return function(*args, **kwargs)

    return _f


def load_json_file(file_path: str) -> dict:
    """

    Parameters
    ----------
    file_path : str
        path to the file, relative paths are resolved against the lstdtools package

    Returns
    -------
    data : dict
        parsed data from json file
    """

    if not os.path.isabs(file_path):
        file_path = Path(__file__).parent.parent.joinpath(file_path)
    if not os.path.exists(file_path):
        raise OSError(f"Json file not found at {file_path}")
    with open(file_path) as json_file:
        data = json.load(json_file)
    return data


def resolve_threads(threads=None) -> int:
    """
    Works out how many worker threads to use: an explicit value wins, then the ALLSTD_THREADS environment
    variable, then the machine's parallelism.

    Parameters
    ----------
    threads : int
        The requested number of threads, or None

    Returns
    -------
    int
        The number of threads to use, at least 1
    """

    if threads is None:
        from_environment = os.getenv(THREADS_ENVIRONMENT_VARIABLE)
        if from_environment:
            try:
                threads = int(from_environment)
            except ValueError as exception:
                raise ValueError(
                    f"{THREADS_ENVIRONMENT_VARIABLE} must be an integer, found '{from_environment}'"
                ) from exception
            logging.debug(f"thread count {threads} taken from environment")
        else:
            threads = os.cpu_count() or 1

    if threads < 1:
        raise ValueError(f"The thread count must be at least 1, you supplied {threads}")
    return threads


def parse_float_list(text: str) -> list:
    """
    Parses a comma separated list of floats e.g. "0,0.5,1"
    """

    try:
        return [float(item) for item in text.split(",") if item.strip() != ""]
    except ValueError as exception:
        raise ValueError(
            f"could not parse '{text}' as a comma separated list of numbers"
        ) from exception


def parse_int_list(text: str) -> list:
    """
    Parses a comma separated list of integers e.g. "10,50,250"
    """

    try:
        return [int(item) for item in text.split(",") if item.strip() != ""]
    except ValueError as exception:
        raise ValueError(
            f"could not parse '{text}' as a comma separated list of integers"
        ) from exception
