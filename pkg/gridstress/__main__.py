"""Entry point for running the module directly: python -m gridstress"""

from gridstress.cli.main import app

if __name__ == "__main__":
    app()
