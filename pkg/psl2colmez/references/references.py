DEFAULTS = {
    "max_q": 2048,
    "exhaustive_census_max_q": 13,
    "exhaustive_max_n": 12,
    "census_max_epsilon": 7,
    "samples": 10_000,
    "seed": 0,
    "batch_size": 256,
    "schema_version": "1.0",
}

# Number of PSL2(F_q)-orbits of CM types of signature (q+1-eps, eps),
# eps = 1, ..., 7, as published for the unitary CM fields with Galois
# group PSL2(F_q) x Z/2.
REFERENCE_CENSUS = {
    7: (1, 1, 1, 3, 1, 1, 1),
    9: (1, 1, 2, 3, 4, 3, 2),
    11: (1, 1, 1, 2, 2, 6, 2),
    13: (1, 1, 2, 4, 5, 7, 10),
    17: (1, 1, 2, 4, 8, 15, 20),
    19: (1, 1, 1, 5, 6, 19, 26),
    23: (1, 1, 1, 5, 7, 34, 57),
    25: (1, 1, 2, 7, 16, 45, 108),
    27: (1, 1, 1, 6, 10, 54, 124),
    29: (1, 1, 2, 6, 19, 68, 194),
    31: (1, 1, 1, 8, 15, 83, 233),
}

# Odd prime powers the verification suites sweep by default, and how.
VERIFY_SUITES = {
    "census": {
        "qs": (5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31),
    },
    "chartable": {
        "qs": (5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31),
    },
    "theorem61": {
        "qs": (3, 5, 7, 9, 11, 13, 17),
        "exhaustive_max_q": 11,
        "samples": 10_000,
    },
    "identities": {
        "qs": (3, 5, 7, 9, 11, 13, 17, 19, 23),
    },
    "stabilizer": {
        "qs": (5, 7, 11, 13, 17, 19),
    },
    "heights": {
        "qs": (3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31),
    },
    "lfunctions": {
        "discriminants": (-3, -4, -7, -8, -11),
        "class_number_bound": 200,
    },
}

TOLERANCES = {
    "l_derivative": 1e-8,
    "finite_difference_step": 1e-5,
    "zeta_q": 1e-12,
}
