"""One pass/fail line per acceptance criterion, filled in by test_acceptance."""

LINES = {}
