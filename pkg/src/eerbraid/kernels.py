"""Hot loops: word reversing over an integer complement table, the
union-find closure used by the rewriting oracle, and greedy factoring.

All run under ``numba.njit`` unless ``EERBRAID_DISABLE_NUMBA`` is set, in
which case the identical code runs as plain Python over numpy arrays.
"""

from __future__ import annotations

import numpy as np

from ._accel import njit

TERMINATED = 0
STEP_LIMIT = 1


@njit(cache=True)
def reverse_word(word, comp_ptr, comp_ulen, comp_vlen, comp_buf, ngens, exps, e, step_limit):
    """Fully right-reverse ``word`` always rewriting the leftmost ``x~ y`` pair.

    ``word`` holds signed letters (generator code + 1).  For generators
    ``x != y`` the complement ``x u = y v`` is stored at
    ``comp_buf[comp_ptr[k]:]`` with ``k = x * ngens + y``: first ``u`` then
    ``v``.  ``exps[c]`` is the exponent of generator ``c`` or -1.

    Returns ``(result, status, steps, seen)`` where ``seen[i]`` records that
    exponent ``i`` occurred somewhere in the calculation.
    """
    length = word.shape[0]
    cap = 2 * length + 16
    buf = np.empty(cap, np.int64)
    for k in range(length):
        buf[k] = word[k]
    seen = np.zeros(max(e, 1), np.bool_)
    for k in range(length):
        c = abs(buf[k]) - 1
        if exps[c] >= 0:
            seen[exps[c]] = True

    status = TERMINATED
    steps = 0
    pos = 0
    while True:
        found = -1
        i = pos
        while i < length - 1:
            if buf[i] < 0 and buf[i + 1] > 0:
                found = i
                break
            i += 1
        if found < 0:
            break
        if steps >= step_limit:
            status = STEP_LIMIT
            break
        x = -buf[found] - 1
        y = buf[found + 1] - 1
        if x == y:
            ulen = 0
            vlen = 0
            start = 0
        else:
            k = x * ngens + y
            ulen = comp_ulen[k]
            vlen = comp_vlen[k]
            start = comp_ptr[k]
        new_length = length - 2 + ulen + vlen
        if new_length > cap:
            cap = 2 * new_length + 16
            grown = np.empty(cap, np.int64)
            for k in range(length):
                grown[k] = buf[k]
            buf = grown
        tail = buf[found + 2:length].copy()
        for k in range(ulen):
            buf[found + k] = comp_buf[start + k]
        for k in range(vlen):
            buf[found + ulen + k] = -comp_buf[start + ulen + vlen - 1 - k]
        for k in range(tail.shape[0]):
            buf[found + ulen + vlen + k] = tail[k]
        for k in range(ulen + vlen):
            c = comp_buf[start + k] - 1
            if exps[c] >= 0:
                seen[exps[c]] = True
        length = new_length
        steps += 1
        pos = found - 1 if found > 0 else 0
    return buf[:length].copy(), status, steps, seen


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def class_labels(length, nletters, rule_ptr, rule_len, rule_lhs, rule_rhs):
    """Partition all words of ``length`` over ``nletters`` letters into rewriting classes.

    Words are encoded in base ``nletters`` with the first letter most
    significant.  Directed rules ``lhs -> rhs`` are grouped by first letter of
    ``lhs``: rules for letter ``a`` are ``rule_ptr[a]:rule_ptr[a + 1]``, and
    rule ``k`` has sides ``rule_lhs[k, :rule_len[k]]``, ``rule_rhs[k, :rule_len[k]]``.

    Returns one label per word; labels number the classes by their least word.
    """
    total = nletters ** length
    parent = np.arange(total)
    place = np.empty(length + 1, np.int64)
    place[length] = 1
    for k in range(length - 1, -1, -1):
        place[k] = place[k + 1] * nletters
    digits = np.empty(length, np.int64)
    for code in range(total):
        rest = code
        for k in range(length - 1, -1, -1):
            digits[k] = rest % nletters
            rest //= nletters
        for pos in range(length):
            first = digits[pos]
            for rule in range(rule_ptr[first], rule_ptr[first + 1]):
                span = rule_len[rule]
                if pos + span > length:
                    continue
                ok = True
                for k in range(1, span):
                    if digits[pos + k] != rule_lhs[rule, k]:
                        ok = False
                        break
                if not ok:
                    continue
                other = code
                for k in range(span):
                    other += (rule_rhs[rule, k] - rule_lhs[rule, k]) * place[pos + k + 1]
                a = _find(parent, code)
                b = _find(parent, other)
                if a != b:
                    if a < b:
                        parent[b] = a
                    else:
                        parent[a] = b
    labels = np.empty(total, np.int64)
    next_label = 0
    root_label = np.full(total, -1, np.int64)
    for code in range(total):
        root = _find(parent, code)
        if root_label[root] < 0:
            root_label[root] = next_label
            next_label += 1
        labels[code] = root_label[root]
    return labels


@njit(cache=True)
def greedy_factors(codes, mul, lquot, eps_id):
    """Left-weighted factorization of the positive word ``codes`` (0-based generator codes).

    ``mul[s, a]`` is the simple ``s a`` or -1; ``lquot[a, t]`` is the simple
    ``a~ t`` when atom ``a`` left-divides ``t``, else -1.  Each new letter is
    appended as a factor and the pairs are re-normalized from right to left.
    Returns the factor ids, trailing empty factors removed.
    """
    natoms = lquot.shape[0]
    factors = np.empty(codes.shape[0] + 1, np.int64)
    m = 0
    for c in codes:
        factors[m] = mul[eps_id, c]
        m += 1
        j = m - 1
        while j > 0:
            s = factors[j - 1]
            t = factors[j]
            changed = False
            moved = True
            while moved:
                moved = False
                for a in range(natoms):
                    q = lquot[a, t]
                    if q >= 0:
                        sa = mul[s, a]
                        if sa >= 0:
                            s = sa
                            t = q
                            moved = True
                            changed = True
                            break
            factors[j - 1] = s
            factors[j] = t
            if not changed:
                break
            j -= 1
        while m > 0 and factors[m - 1] == eps_id:
            m -= 1
    return factors[:m].copy()
