"""
mopkit - matrix orthogonal polynomials from pre-sequences

Command-line entry point: `python app.py <generate|verify|moments> <model> ...`

Architecture Overview:
- src/config/settings.py: numeric defaults and environment overrides
- src/numerics/: matrix polynomials, quadrature, weights, pre-sequences,
  differential operators, hypergeometric series, commutants
- src/models/: the registered models (cp2, legendre)
- src/services/verification_service.py: the named verification checks
- src/components/: argument parsing and JSON/CSV output
- src/main.py: application class and exit codes
"""

import sys

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
