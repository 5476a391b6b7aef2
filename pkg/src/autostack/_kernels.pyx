# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled inner loops of the word-problem solver; see ``_kernels_py``."""


def free_reduce(list word, list inv):
    cdef list stack = []
    cdef Py_ssize_t top = 0
    cdef long a
    for a in word:
        if top and <long>stack[top - 1] == <long>inv[a]:
            stack.pop()
            top -= 1
        else:
            stack.append(a)
            top += 1
    return stack


def splice(list word, Py_ssize_t pos, repl, list inv):
    cdef list stack = word[:pos]
    cdef Py_ssize_t low = pos
    cdef Py_ssize_t top = pos
    cdef Py_ssize_t k, n = len(word)
    cdef long a
    for a in repl:
        if top and <long>stack[top - 1] == <long>inv[a]:
            stack.pop()
            top -= 1
            if top < low:
                low = top
        else:
            stack.append(a)
            top += 1
    for k in range(pos + 1, n):
        a = word[k]
        if top and <long>stack[top - 1] == <long>inv[a]:
            stack.pop()
            top -= 1
            if top < low:
                low = top
        else:
            stack.append(a)
            top += 1
    return stack, low


def scan(list word, list states, Py_ssize_t valid, list table, accepting):
    del states[valid + 1:]
    cdef long q = states[valid]
    cdef long r
    cdef Py_ssize_t i = valid
    cdef Py_ssize_t n = len(word)
    cdef list row
    while i < n:
        row = <list>table[q]
        r = row[<long>word[i]]
        if not accepting[r]:
            break
        states.append(r)
        q = r
        i += 1
    return i


def run(list table, long start, word):
    cdef long q = start
    cdef long a
    for a in word:
        q = (<list>table[q])[a]
    return q
