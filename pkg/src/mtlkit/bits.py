"""Node sets as Python ints: bit ``i`` is set iff node ``i`` is a member."""


def mask_of(nodes):
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def members(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def has(mask, v):
    return (mask >> v) & 1 == 1
