from qcycle.sampling import random_laurent, random_symmetric, random_wedge  # noqa: F401
