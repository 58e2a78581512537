import logging
import coloredlogs

LOG_LEVELS = {
    "notset": logging.NOTSET,
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
    "critical": logging.CRITICAL,
}


class LstdLogger:
    """
    Installs coloured logging on the root logger.

    Parameters
    ----------
    log_level : str
        One of notset, debug, info, warning, error or critical; info when empty
    logging_file : str
        Optional path that log messages are also written to
    """

    def __init__(self, log_level="info", logging_file=None):
        self.begin_logger(log_level, logging_file)

    @staticmethod
    def begin_logger(log_level, logging_file) -> None:
        """
        Sets the level of the root logger and attaches coloredlogs to it.

        Parameters
        ----------
        log_level : str
            Name of the level, a key of LOG_LEVELS
        logging_file : str
            Optional path of a file that also receives the messages

        Raises
        ------
        ValueError
            naming the valid levels when ``log_level`` is not one of them
        """

        if not log_level:
            log_level = "info"

        if log_level not in LOG_LEVELS:
            raise ValueError(
                f"logging level provided ({log_level}) is not in list of valid logging levels {list(LOG_LEVELS)}"
            )

        if logging_file:
            logging.basicConfig(filename=logging_file)

        root_logger = logging.getLogger()
        root_logger.setLevel(LOG_LEVELS[log_level])
        coloredlogs.install(level=LOG_LEVELS[log_level], logger=root_logger)
