"""Secret-breach detection toolkit for software issue reports.

Pipeline: clean noisy report text -> scan with a secret-pattern registry ->
extract a context window around each candidate -> classify each window ->
report verdicts or evaluation metrics.
"""

__version__ = "0.1.0"
