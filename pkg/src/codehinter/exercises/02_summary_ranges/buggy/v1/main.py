def format_range(lo, hi):
    if lo == hi:
        return str(lo)
    return f"{lo}->{hi}"


def summary_ranges(nums):
    """Collapse sorted unique integers into consecutive-range strings."""
    ranges = []
    if not nums:
        return ranges
    start = nums[0]
    for i in range(1, len(nums)):
        if nums[i] != nums[i - 1] + 2:
            ranges.append(format_range(start, nums[i - 1]))
            start = nums[i]
    ranges.append(format_range(start, nums[-1]))
    return ranges
