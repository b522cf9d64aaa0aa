"""The finite dihedral surrogate: a surjective cocycle whose skew product is disconnected.

The groupoid is the pair groupoid on {x, y} times Z4, mapped into the dihedral
group of order 8 by sending the arrow to a reflection and the isotropy
generator to a rotation.
"""

from skewcat import fixtures as fx
from skewcat.category import connected_components
from skewcat.groupoid import fundamental_group, pi_image, seven_criteria_check
from skewcat.skew import skew_product


def main():
    cat, psi = fx.dihedral_surrogate()
    target = psi.target
    print(f"groupoid: {len(cat.vertices)} vertices, {len(cat)} morphisms")
    print(f"psi surjective: {psi.image() == set(target.elements)}")
    fg = fundamental_group(cat)
    print(f"pi(G, x) = {fg.presentation.render()}")
    image = pi_image(cat, psi, fg)
    print(f"psi(pi) has order {len(image)}, index {target.order // len(image)} in D4")
    sp = skew_product(cat, psi, target)
    comps = connected_components(sp.category)
    print(f"skew product: {len(sp.category)} morphisms, {len(comps)} components")
    for k, v in seven_criteria_check(cat, psi).items():
        print(f"  {k}: {v}")


if __name__ == "__main__":
    main()
