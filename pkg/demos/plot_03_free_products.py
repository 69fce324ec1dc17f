"""
Free products through their finite quotients
============================================

C2 * C2 is infinite, but each of its finite quotients is a group generated
by the images of the two factors. Words are told apart by such quotients,
and the level quotient collects all of them up to a size bound.
"""

from galfree.catalog import default_catalog
from galfree.embed import check_extension_property
from galfree.freeprod import (
    FreeProductContext,
    enumerate_quotients,
    format_word,
    level_quotient,
    separate,
    sylow_retraction,
    word,
)
from galfree.groups import cyclic

ctx = FreeProductContext([cyclic(2), cyclic(2)])
names = [["", "s"], ["", "t"]]
s, t = (0, 1), (1, 1)

# marked quotients up to order 8: dihedral groups and their quotients
classes = enumerate_quotients(ctx, default_catalog(8))
print(len(classes), "classes; types:", list(dict.fromkeys(mq.Q.label for mq in classes)))

# stst and tsts agree in every abelian quotient, but S3 separates them
w1, w2 = word(ctx, s, t, s, t), word(ctx, t, s, t, s)
for bound in (4, 6):
    wit = separate(ctx, w1, w2, default_catalog(bound))
    label = "none" if wit is None else f"{wit.H.label}, values {wit.values}"
    print(f"{format_word(w1, names)} vs {format_word(w2, names)} at bound {bound}: {label}")

# the level quotient at bound 6 is D6, and it is universal at that bound
q6 = level_quotient(ctx, default_catalog(6))
rep = check_extension_property(q6.marked_group(), default_catalog(6))
print("Q6 has order", q6.Q.order, "; extension property:", rep.passed, f"({rep.tuples_checked} tuples)")

# Sylow retraction on S3 marked by two transpositions
s3 = next(mq for mq in classes if mq.Q.label == "S3")
ret = sylow_retraction(s3, 2)
print("P =", ret.P.elements, "conjugators", ret.conjugators, "checks ok:", ret.ok)
