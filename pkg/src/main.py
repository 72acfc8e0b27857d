"""
Console entry point.

Run via:
    xkm gen --family lb2 --d 3 --out lb.csv

Or directly:
    python -m src.main fit --algo twocut --objective medians --in lb.csv
"""

from src.cli.router import app


def main() -> None:
    app()


if __name__ == "__main__":
    main()
