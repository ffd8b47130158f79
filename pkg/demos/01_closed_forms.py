"""Closed forms and the identity chain connecting them.

The qubit-ququart bound-entanglement probability has two equivalent
expressions: a long form with sub-terms A, B, C and a reduced form.  The
reduction rests on a radical factorization and two logarithm/acoth
identities, all checked numerically here; the two-ququart probability is
elementary and equals a product-of-uniforms tail probability.
"""
import entarch as ea

long_form = ea.p1_original()
reduced = ea.p1_simplified()

print("qubit-ququart bound-entanglement probability")
print(f"  long form    : {long_form.value:.17f}")
print(f"  reduced form : {reduced.value:.17f}")
print(f"  |difference| : {abs(long_form.value - reduced.value):.2e}")
print("  sub-terms    :", {k: round(v, 6) for k, v in long_form.parts.items()})

print("\nidentities used in the reduction (absolute residuals)")
for name, residual in {**long_form.identity_checks, **reduced.identity_checks}.items():
    print(f"  {name:32s} {residual:.2e}")
print(f"  {'li1_difference_is_twice_acoth':32s} {ea.li1_identity_check():.2e}")

two_ququart = ea.p2_closed()
print("\ntwo-ququart bound-entanglement probability (cube domain)")
print(f"  value        : {two_ququart.value:.17f}")
print(f"  cross form   : {two_ququart.parts['cross_form']:.17f}")

print("\nthe order-one separability kernel")
for eps in (1e-4, 0.25, 0.5, 0.75, 1.0):
    print(f"  chi_tilde_1({eps:g}) = {ea.chi_tilde_1(eps):.12f}")

checks = ea.verify_all()
worst = max(checks, key=lambda c: c["residual"] / c["tolerance"])
print(f"\nverification: {sum(c['passed'] for c in checks)}/{len(checks)} checks pass "
      f"(worst margin: {worst['name']}, residual {worst['residual']:.2e} "
      f"vs tolerance {worst['tolerance']:.0e})")
