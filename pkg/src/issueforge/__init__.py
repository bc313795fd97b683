"""issueforge: turn labeled issue-tracker data into review-style training text
and measure the effect of augmenting intent classifiers with it."""

__version__ = "0.1.0"
