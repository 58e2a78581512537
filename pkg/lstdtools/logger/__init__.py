from lstdtools.logger.LstdLogger import LstdLogger
