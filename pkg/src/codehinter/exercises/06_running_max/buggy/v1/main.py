def running_max(values):
    result = []
    best = None
    for v in values:
        if best is None or v < best:
            best = v
        result.append(best)
    return result
