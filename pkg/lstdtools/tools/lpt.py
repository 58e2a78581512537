import logging
import sys

import pandas as pd

from lstdtools.estimators.exceptions import (
    InconsistentDimension,
    LstdToolsError,
    NumericalError,
    ParseError,
)
from lstdtools.logger import LstdLogger
from .either import Either

EXIT_SUCCESS = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


# Display a dataframe with no cropping
def display_df(df, decimals=6):
    with pd.option_context(
        "display.width",
        None,
        "display.max_rows",
        1000,
        "display.max_colwidth",
        None,
        "display.float_format",
        ("{:,." + str(decimals) + "g}").format,
    ):
        print(df.fillna(""))


# Write a table as CSV with LF line endings and shortest round-trip floats
def write_csv(df, filename):
    df.to_csv(filename, index=False, lineterminator="\n")


def read_csv(path):
    return pd.read_csv(path)


def exit_code(error):
    """
    Maps a failure onto the exit code of the tools: 4 numerical, 3 input/output, 2 usage or configuration
    """
    if isinstance(error, NumericalError):
        return EXIT_NUMERICAL
    if isinstance(
        error,
        (
            OSError,
            ParseError,
            InconsistentDimension,
            pd.errors.EmptyDataError,
            pd.errors.ParserError,
        ),
    ):
        return EXIT_IO
    if isinstance(error, (LstdToolsError, ValueError, TypeError, KeyError)):
        return EXIT_USAGE
    return 1


# Report an error and return the exit code
def display_error(error):
    code = exit_code(error)
    logging.debug("tool failed", exc_info=error)
    print(f"ERROR: {error}", file=sys.stderr)
    return code


def configure_logging(args):
    LstdLogger(
        getattr(args, "debug", None) or "info", getattr(args, "logging_file", None)
    )


# Template 'program'
def standard_flow(parser, executor, display_df=display_df):
    args = parser()

    try:
        configure_logging(args)
    except ValueError as error:
        return display_error(error)

    either = Either.attempt(executor, args)

    # called if the executor returns a success
    def success(df):
        # Table producing tools return a dataframe
        if df is not None:
            fn = args.__dict__.get("filename", None)
            if fn is not None:
                try:
                    write_csv(df, fn)
                except OSError as error:
                    return display_error(error)
                logging.info(f"wrote {len(df)} rows to {fn}")
            else:
                display_df(df)
        return EXIT_SUCCESS

    return either.match(left=display_error, right=success)
