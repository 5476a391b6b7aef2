"""Pure-Python inner loops of the word-problem solver.

Words are lists of letter indices; ``inv[i]`` is the index of the inverse
letter.  Acceptors are dense tables ``table[state][letter]`` with an
``accepting`` flag list.  Mirrors ``_kernels.pyx`` exactly.
"""


def free_reduce(word, inv):
    stack = []
    for a in word:
        if stack and stack[-1] == inv[a]:
            stack.pop()
        else:
            stack.append(a)
    return stack


def splice(word, pos, repl, inv):
    """Replace ``word[pos]`` by ``repl`` and freely reduce around the seam.

    ``word[:pos]`` and ``word[pos+1:]`` must already be freely reduced.
    Returns ``(new_word, low)`` where ``new_word[:low]`` equals ``word[:low]``.
    """
    stack = word[:pos]
    low = pos
    for seq in (repl, word[pos + 1:]):
        for a in seq:
            if stack and stack[-1] == inv[a]:
                stack.pop()
                if len(stack) < low:
                    low = len(stack)
            else:
                stack.append(a)
    return stack, low


def scan(word, states, valid, table, accepting):
    """Longest accepted prefix of ``word``, reusing ``states[:valid+1]``.

    On return ``states[k]`` is the state after ``k`` letters for every
    ``k <= i`` where ``i`` is the returned prefix length.
    """
    del states[valid + 1:]
    q = states[valid]
    i = valid
    n = len(word)
    while i < n:
        r = table[q][word[i]]
        if not accepting[r]:
            break
        states.append(r)
        q = r
        i += 1
    return i


def run(table, start, word):
    q = start
    for a in word:
        q = table[q][a]
    return q
