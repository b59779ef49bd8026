#!/usr/bin/env python3
"""Generating random markets and reading off ordinal preferences.

Cardinal utilities mix a common component (shared across one side) with an
idiosyncratic component, u = w * common + (1 - w) * idiosyncratic.  Moving
the weight from 0 to 1 morphs preferences from independent to identical.
"""
from interview_match import (
    DOCTORS,
    HOSPITALS,
    MarketConfig,
    generate_market,
    to_preferences,
)

config = MarketConfig(
    n_doctors=5,
    n_hospitals=5,
    lambda_d=0.5,
    lambda_h=0.5,
    distribution="standard-normal",
    acceptability="all-acceptable",
    seed=7,
)
print("config JSON (the documented on-disk format):")
print(config.to_json())

instance = generate_market(config)
print("\ncommon hospital quality draws:", instance.common_hospital.round(2))
print("doctor 0's cardinal utilities: ", instance.u_doctor[0].round(2))

doctors = to_preferences(instance, DOCTORS)
hospitals = to_preferences(instance, HOSPITALS)
print("\nordinal preference lists (best first):")
for d, lst in enumerate(doctors.lists):
    print(f"  doctor {d}: hospitals {list(lst)}")
for h, lst in enumerate(hospitals.lists):
    print(f"  hospital {h}: doctors {list(lst)}")

print("\nfull common weight on the doctor side makes every list identical:")
aligned = generate_market(
    MarketConfig(n_doctors=3, n_hospitals=5, lambda_d=1.0, lambda_h=0.0, seed=7)
)
for d, lst in enumerate(to_preferences(aligned, DOCTORS).lists):
    print(f"  doctor {d}: hospitals {list(lst)}")

print("\nwith an outside option at zero, negative-utility partners drop out:")
guarded = generate_market(
    MarketConfig(
        n_doctors=4,
        n_hospitals=8,
        lambda_d=0.5,
        lambda_h=0.5,
        acceptability="outside-option-zero",
        seed=21,
    )
)
for d, lst in enumerate(to_preferences(guarded, DOCTORS).lists):
    print(f"  doctor {d} finds {len(lst)} of 8 hospitals acceptable")
