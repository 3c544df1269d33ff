"""The symplectic-similitude facts behind the Gamma6 maximality argument.

    python3 demos/sp8_checks.py
"""

from e6weyl.weyl import obstruction_checks

for c in obstruction_checks(6):
    flag = "ok  " if c["ok"] else "FAIL"
    extra = "" if "unprimed_reading_holds" not in c else f"  (unprimed reading holds: {c['unprimed_reading_holds']})"
    print(f"{flag} {c['name']}: {c['computed']}{extra}")
