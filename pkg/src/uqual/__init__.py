"""uqual: uncertainty-quality toolkit.

Combines quantitative uncertainty/sensitivity analysis (Monte Carlo, Morris
elementary effects, Sobol indices) with epistemic appraisal (pedigree
scoring by expert panels), joins the two in a diagnostic diagram with a
danger-zone quadrant, and structures sensitivity-auditing reports.
"""

__version__ = "0.1.0"
