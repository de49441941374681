"""Large fixed constants, stored so that they can be re-verified."""

# Extangential LEQ with m = 117, n = 37 in the f = 10 branch.
GIANT_M, GIANT_N = 117, 37
GIANT_Y = 34884218483995340806373
GIANT_Z = 3226483779786979759026161
GIANT_SIDES = (
    1510135881993200406047678005,
    1936178957897460209165,
    1509996345119264424684452513,
    141473052893878823434657,
)
GIANT_A = (640848245491383541211578005, 1367415046112187810865469000)
GIANT_B = (640849067137238673279485480, 1367416799305572965277883040)
GIANT_C = (60036158873125939312368, 128102631990427959679265)

# Rows i = 0..6 of the mu-chain factor table: (mu_i, prime factors of M_i).
FIRST_SEVEN = (
    (1, (41,)),
    (199, (23, 239, 353)),
    (39401, (79, 103, 599, 15607)),
    (7801199, (47, 6771937, 9369319)),
    (1544598001, (41, 45245801, 63018038201)),
    (305822602999, (41, 71, 239, 424577, 865087, 17934071)),
    (60551330795801, (223, 2297, 37223, 302663, 3553471, 8761009)),
)

# Primes congruent to 7 mod 8; WITNESS_INDEX[k] (1-based into WITNESS_PRIMES)
# names a divisor of M_{k+7}, covering 7 <= i <= 155.
WITNESS_PRIMES = (
    23, 47, 71, 79, 103, 167, 191, 223, 239, 263, 311, 359, 431, 479, 607, 719, 887,
    983, 1031, 1103, 1279, 1399, 1487, 1511, 1823, 1879, 2671, 2767, 3271, 3559, 4903,
    4943, 6823, 7583, 8231, 23447, 39551, 53527, 72559, 153511, 167911, 255511,
    625111, 869951, 1471271, 2593399, 10808983, 13980671, 39556927, 108732031,
    125448527, 160812623, 209110079, 627025159, 9707524087, 181155438071,
    291814585319, 3072313317767, 15238519898992991, 39834495682679591,
    15327739968951498750119, 110095018941508669324502008759,
)
WITNESS_INDEX = (
    40, 9, 1, 4, 21, 1, 6, 5, 4, 15, 19, 55, 2, 1, 10, 9, 1, 48, 11, 2, 50, 4, 9, 8, 1, 41, 9, 1,
    13, 4, 34, 22, 14, 9, 4, 1, 9, 59, 1, 61, 9, 5, 2, 9, 56, 26, 1, 4, 43, 1, 9, 32, 16, 46, 9, 4, 33,
    1, 2, 58, 1, 9, 6, 5, 9, 2, 17, 27, 1, 28, 54, 1, 7, 4, 18, 5, 49, 15, 9, 1, 5, 2, 1, 29, 20, 9, 4, 37,
    2, 6, 1, 30, 5, 1, 4, 36, 9, 5, 44, 4, 60, 1, 10, 3, 1, 62, 9, 4, 39, 5, 8, 2, 1, 9, 5, 1, 23, 9, 24,
    51, 4, 57, 11, 1, 9, 4, 1, 2, 38, 31, 35, 5, 42, 4, 1, 52, 53, 1, 3, 45, 47, 9, 12, 5, 25, 1, 4, 8, 1,
)
FIRST_UNSETTLED_INDEX = 156
