import os
import sys
import logging

# Add the project root to the import path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.config import DEFAULT_N_MAX, DEFAULT_PARALLELISM, DEFAULT_ROOT_DIGITS
from src.main import EXIT_IO, OutputError, cmd_table
from src.reports import RunConfig

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def main():
    import argparse

    parser = argparse.ArgumentParser(description="Export the certified zeros table over the default mu grid")
    parser.add_argument("--out", type=str, default="zeros_table.csv", help="Output CSV path")
    parser.add_argument("--nmax", type=int, default=DEFAULT_N_MAX, help="Largest Hermite index")
    parser.add_argument("--digits", type=int, default=DEFAULT_ROOT_DIGITS, help="Decimals per zero")
    parser.add_argument("--parallelism", type=int, default=DEFAULT_PARALLELISM, help="Worker processes")
    args = parser.parse_args()

    config = RunConfig(
        n_max=args.nmax,
        root_digits=args.digits,
        parallelism=args.parallelism,
        output_format="csv",
    )
    logger.info(f"Exporting zeros for n <= {config.n_max} over mu = {config.echo()['mu_list']}")
    try:
        return cmd_table(config, args.out)
    except OutputError as e:
        logger.error(str(e))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
