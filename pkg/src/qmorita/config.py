"""Default budgets shared by the constructions."""

#: Cap on the number of elements any materialized carrier may have.
DEFAULT_BUDGET = 20000

#: Matrix quantales larger than this skip the full multiplication table.
LAZY_TABLE_THRESHOLD = 4096
