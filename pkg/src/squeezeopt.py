import logging
from logging.handlers import RotatingFileHandler
import sys
from squeezing_measure.cli import main as cli_main

def setup_logging(verbose: bool = False) -> None:
    """
    Configures logging to file and console.
    """
    log_formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    level = logging.DEBUG if verbose else logging.INFO

    # Log to file
    log_file = "squeezeopt.log"
    file_handler = RotatingFileHandler(log_file, maxBytes=5*1024*1024, backupCount=2) # 5MB per file, 2 backups
    file_handler.setFormatter(log_formatter)
    file_handler.setLevel(level)

    # Log to console; stdout carries the report
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(log_formatter)
    stream_handler.setLevel(logging.DEBUG if verbose else logging.WARNING)

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    # Avoid duplicate handlers if setup_logging is called multiple times
    if not any(isinstance(h, RotatingFileHandler) for h in root_logger.handlers):
        root_logger.addHandler(file_handler)
    if not any(type(h) is logging.StreamHandler for h in root_logger.handlers):
        root_logger.addHandler(stream_handler)

    logging.info("Logging initialized.")

def main() -> None:
    """
    Main function to run the squeezeopt command line.
    """
    sys.exit(cli_main(sys.argv[1:], log_setup=setup_logging))

if __name__ == "__main__":
    main()
