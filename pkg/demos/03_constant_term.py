"""The constant term of a Hecke operator, exactly.

The indicator measure of the double coset K_0 diag(p,1) K_0 restricts to
the diagonal torus through either of the two opposite Borel subgroups.
Unnormalized, the two answers differ; after the |lambda|^(1/2) twist they
coincide, which is the parabolic independence theorem at its smallest
nontrivial instance.  An independent oracle (left coset decomposition plus
direct fiber integration) confirms the machinery.
"""

from cocenter.groups import BlockParabolic
from cocenter.matrices import PrimeContext
from cocenter.measures import (
    double_coset_measure,
    measure_to_jsonable,
    res_normalized,
    res_unnormalized,
)
from cocenter.oracles import constant_term_oracle_gl2


def show(tag, measure):
    print(tag)
    for row in measure_to_jsonable(measure)["support"]:
        print("   rep", row["rep"], " coeff", row["coeff"])


for p in (2, 3):
    ctx = PrimeContext(p, 1)
    upper = BlockParabolic(2, (1, 1), "upper")
    lower = upper.opposite()
    h = double_coset_measure(2, ctx, (1, 0))
    print(f"\n=== p = {p}: indicator of K0 diag({p},1) K0, "
          f"{len(h)} level cosets ===")

    up_plain = res_unnormalized(h, upper)
    low_plain = res_unnormalized(h, lower)
    show("restriction through the upper Borel:", up_plain)
    show("restriction through the lower Borel:", low_plain)
    print("unnormalized restrictions agree?", up_plain == low_plain)

    up = res_normalized(h, upper)
    low = res_normalized(h, lower)
    show("normalized restriction (upper):", up)
    print("normalized restrictions agree?", up == low)

    oracle = constant_term_oracle_gl2(ctx, normalized=True)
    print("matches the independent direct-integration oracle?", up == oracle)
