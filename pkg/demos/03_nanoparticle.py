"""
Levitated nanoparticle densities
================================

The nanoparticle law exp(S/2) |S|^nu K_nu(alpha |S|) with nu = d + 1/2
is compared with the Gaussian of the same mean and with the bound m.
More degrees of freedom give lower entropy at a fixed mean; the d = 1
curve is the one hugging the bound.
"""
from dftbound import differential_entropy, ft_report
from dftbound.curves import figure2_table
from dftbound.models import NanoParams, nano_density

rows = figure2_table()
cols = ["h_nano_d1", "h_nano_d2", "h_nano_d3", "h_gauss", "m_bound"]
print("  mean  " + "  ".join(f"{c:>9}" for c in cols))
for r in rows[::3]:
    print(f"{r['mean']:6.2f}  " + "  ".join(f"{r[c]:9.4f}" for c in cols))

d = nano_density(NanoParams(1, 1.2))
print("\nd=1, alpha=1.2:", ft_report(d))
print("entropy:", differential_entropy(d))
