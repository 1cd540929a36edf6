"""Pure-Python minimal-witness kernels (used when the compiled core is absent).

A compiled subgraph is four flat lists in topological order (children
before parents, target last):

    ops[i]   0 = candidate leaf, 1 = true, 2 = false, 3 = OR, 4 = AND
    args[i]  candidate index for op 0, otherwise unused
    offsets  CSR row pointers into ``kids`` (len(ops) + 1 entries)
    kids     child positions, each smaller than its parent's position

``min_witness`` returns ``(size, indices)`` of the first successful candidate
subset in (cardinality, lexicographic) order, or ``(-1, None)`` if even the
full candidate set fails. In proof mode a chosen candidate is true and the
target must come out true; in disproof mode a chosen candidate is false,
the rest are true, and the target must come out false.
"""

from itertools import combinations

OP_LEAF, OP_TRUE, OP_FALSE, OP_OR, OP_AND = range(5)

# truth tables over 2**m subsets stay a few MB up to here
TRUTH_TABLE_MAX_LEAVES = 24


def _evaluate(ops, args, offsets, kids, chosen, disproof):
    vals = [False] * len(ops)
    for i, op in enumerate(ops):
        if op == OP_LEAF:
            vals[i] = chosen[args[i]] != disproof
        elif op == OP_TRUE:
            vals[i] = True
        elif op == OP_FALSE:
            vals[i] = False
        elif op == OP_OR:
            vals[i] = any(vals[k] for k in kids[offsets[i]:offsets[i + 1]])
        else:
            vals[i] = all(vals[k] for k in kids[offsets[i]:offsets[i + 1]])
    return vals[-1] != disproof


def min_witness_enum(ops, args, offsets, kids, m, disproof):
    """Direct enumeration with early exit."""
    chosen = [True] * m
    if not _evaluate(ops, args, offsets, kids, chosen, disproof):
        return -1, None
    for s in range(m + 1):
        for combo in combinations(range(m), s):
            chosen = [False] * m
            for i in combo:
                chosen[i] = True
            if _evaluate(ops, args, offsets, kids, chosen, disproof):
                return s, combo
    raise AssertionError("full candidate set succeeded but no subset did")


def _leaf_patterns(m):
    """patterns[i] has bit k set iff bit i of k is set, over 2**m positions."""
    size = 1 << m
    full = (1 << size) - 1
    out = []
    for i in range(m):
        half = 1 << i
        pat = ((1 << half) - 1) << half
        length = half << 1
        # tile by doubling; bigint division here would be quadratic
        while length < size:
            pat |= pat << length
            length <<= 1
        out.append(pat)
    return full, out


def _cardinality_masks(m):
    """masks[s] has bit k set iff popcount(k) == s."""
    masks = [1]
    length = 1
    for _ in range(m):
        shifted = [0] + [x << length for x in masks]
        masks = [a | b for a, b in zip(masks + [0], shifted)]
        length <<= 1
    return masks


def min_witness_table(ops, args, offsets, kids, m, disproof):
    """Bit-parallel evaluation of every candidate subset at once.

    Each node's value is a 2**m-bit integer whose bit k is the node's value
    under subset k, so OR/AND become integer | and &.
    """
    full, patterns = _leaf_patterns(m)
    vals = [0] * len(ops)
    for i, op in enumerate(ops):
        if op == OP_LEAF:
            pat = patterns[args[i]]
            vals[i] = (full ^ pat) if disproof else pat
        elif op == OP_TRUE:
            vals[i] = full
        elif op == OP_FALSE:
            vals[i] = 0
        elif op == OP_OR:
            acc = 0
            for k in kids[offsets[i]:offsets[i + 1]]:
                acc |= vals[k]
            vals[i] = acc
        else:
            acc = full
            for k in kids[offsets[i]:offsets[i + 1]]:
                acc &= vals[k]
            vals[i] = acc
    good = (full ^ vals[-1]) if disproof else vals[-1]
    if not good:
        return -1, None
    for s, mask in enumerate(_cardinality_masks(m)):
        hits = good & mask
        if not hits:
            continue
        # lexicographically first subset: prefer containing index 0, then 1, ...
        for pat in patterns:
            narrowed = hits & pat
            if narrowed:
                hits = narrowed
        k = hits.bit_length() - 1
        return s, tuple(i for i in range(m) if k >> i & 1)
    raise AssertionError("unreachable: good is non-empty")


def min_witness(ops, args, offsets, kids, m, disproof):
    if m <= TRUTH_TABLE_MAX_LEAVES:
        return min_witness_table(ops, args, offsets, kids, m, disproof)
    return min_witness_enum(ops, args, offsets, kids, m, disproof)
