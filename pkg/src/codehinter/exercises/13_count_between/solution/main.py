def count_between(values, lo, hi):
    count = 0
    for v in values:
        if lo <= v and v <= hi:
            count += 1
    return count
