"""Repeating lines inside a text pushes the test towards rejection."""
from zmgof import analyze_text
from zmgof.corpus import load_sonnet

lines = load_sonnet(1).splitlines()
print("original      ", round(analyze_text("\n".join(lines)).p_value, 4))
for k in (1, 2, 3, 5):
    doctored = lines + lines[:k] * 2
    r = analyze_text("\n".join(doctored))
    print(f"+{k} lines twice ", round(r.p_value, 4) if r.ok else r.status)

# two unrelated vocabularies glued together
mixed = load_sonnet(1) + "\n" + " ".join(f"zz{i}" for i in range(60))
r = analyze_text(mixed)
print("mixed vocab   ", round(r.p_value, 4) if r.ok else r.status)
