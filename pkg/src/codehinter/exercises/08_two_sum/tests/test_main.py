from main import two_sum


def test_adjacent_pair():
    got = two_sum([2, 7, 11], 9)
    assert got == [0, 1], f"expected [0, 1], got {got}"


def test_far_pair():
    got = two_sum([1, 5, 3, 4], 5)
    assert got == [0, 3], f"expected [0, 3], got {got}"


def test_last_two():
    got = two_sum([9, 2, 3], 5)
    assert got == [1, 2], f"expected [1, 2], got {got}"


def test_no_pair():
    got = two_sum([1, 2], 5)
    assert got == [], f"expected [], got {got}"


def test_single_element():
    got = two_sum([4], 8)
    assert got == [], f"expected [], got {got}"


def test_empty():
    got = two_sum([], 3)
    assert got == [], f"expected [], got {got}"
