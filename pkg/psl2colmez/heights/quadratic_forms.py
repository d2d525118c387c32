from math import gcd, isqrt


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """
    Reduced primitive positive definite forms (a, b, c) with b^2 - 4ac = d:
    |b| <= a <= c, and b >= 0 when |b| = a or a = c.
    """
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"Not a negative discriminant: {d}")

    forms = []
    # a <= sqrt(|d| / 3) for reduced forms
    for a in range(1, isqrt(-d // 3) + 1):
        for b in range(-a + 1, a + 1):
            numerator = b * b - d
            if numerator % (4 * a):
                continue
            c = numerator // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
    return forms


def class_number(d: int) -> int:
    return len(reduced_forms(d))


def unit_count(d: int) -> int:
    """
    Number of roots of unity in the order of discriminant d.
    """
    if d == -3:
        return 6
    if d == -4:
        return 4
    return 2
