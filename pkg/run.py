"""Run script for the pdcnet command-line application."""
import sys

from src.app import create_app

app = create_app()

if __name__ == '__main__':
    sys.exit(app.main())
