# pt12.py - Entry point for the planar/toroidal decomposition search
#
# Usage:
#   python pt12.py gen --order 12 --out order12.txt
#   python pt12.py filter --in order12.txt --out survivors.txt --report filter.report
#   python pt12.py search --in survivors.txt --remove-edges 0 --workers 4

from src.cli.commands import app

if __name__ == "__main__":
    app()
