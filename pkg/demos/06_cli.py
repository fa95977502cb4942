"""Drive the command-line tool from Python and read back its CSV."""
import csv
import os
import tempfile

from ambient_swipt.cli import main

with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "sweep.csv")
    main(["sweep", "--axis", "rho", "--min", "0.01", "--max", "1", "--steps", "5", "--log",
          "--metric", "power-outage", "--regime", "worst-case", "--da", "10", "--alpha", "-1",
          "--pc", "-18dBm", "--trials", "20000", "-o", out])
    with open(out) as fh:
        for rec in csv.DictReader(fh):
            print(f"{float(rec['axis_value']):.4g}  {float(rec['mean']):.4g}  {float(rec['bound_value']):.4g}  {rec['case_label']}")
