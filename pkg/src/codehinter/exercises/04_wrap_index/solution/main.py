def wrap_index(i, n):
    if i >= n:
        return i - n
    if i < 0:
        return i + n
    return i
