"""Fetch the SocioPatterns contact datasets used by the reproduction checks.

The canonical downloads live on sociopatterns.org. Where that site is not
reachable, copies of five of the seven files ship inside two PyPI wheels
(``tnetwork`` and ``hypergraphx``) and can be pulled through any package
index. This script downloads those wheels with pip, extracts the files,
checks their SHA-256 and writes them to ``data/`` under short names:

    InVS13.txt  LH10.txt  HS12.txt  HS13.txt  PS.txt

All files are instantaneous contact lists (``t i j [class_i class_j]``,
20 s resolution) readable by ``egomotif.load_edges``. HighSchool11 and the
DTU Bluetooth data are not available this way; place them in ``data/`` as
``HS11.txt`` and ``DTU.txt`` by hand if you have them.

Usage: python3 scripts/fetch_datasets.py [--dest DIR] [--wheels DIR]
"""

from __future__ import annotations

import argparse
import glob
import hashlib
import os
import subprocess
import sys
import tempfile
import zipfile

SOURCES = {
    # short name: (wheel requirement, member path, sha256)
    "LH10": ("tnetwork==1.2", "tnetwork/dyn_graph/toy_data/Contacts_Hospital.csv",
             "780e722bb0092251a06c8f469cb7f3801e2a466107dac4ecb609053f011bf989"),
    "PS": ("tnetwork==1.2", "tnetwork/dyn_graph/toy_data/Primary_School.csv",
           "b0e97f2e20aad3d1c9922202f2f9e9c4079c9878992944e3746c2574d6ef86c6"),
    "HS12": ("tnetwork==1.2", "tnetwork/dyn_graph/toy_data/thiers_2012.csv",
             "2b9068b2d6f442fb390146c5572db05dfaacae05104e8bd5110eac4afccf08e7"),
    "InVS13": ("hypergraphx==1.8.0", "tests/test_data/workplace/workplace.dat",
               "4b1c0c4065766e89106bdfca6687488bc38dd38ef48f42a0efa326144ecd0b2b"),
    "HS13": ("hypergraphx==1.8.0", "tests/test_data/hs/High-School_data_2013.csv",
             "308989ec8db95ed01533e75de1bc11038d8519758b2002b9707fc6b70859b921"),
}

DEFAULT_DEST = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


def find_wheel(folder, requirement):
    name, version = requirement.split("==")
    hits = glob.glob(os.path.join(folder, f"{name}-{version}-*.whl"))
    return hits[0] if hits else None


def download(requirement, folder):
    subprocess.run([sys.executable, "-m", "pip", "download", "--disable-pip-version-check", "--no-deps", "--only-binary=:all:",
                    "-d", folder, requirement], check=True, stdout=subprocess.DEVNULL)
    return find_wheel(folder, requirement)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default=DEFAULT_DEST)
    ap.add_argument("--wheels", help="folder with already downloaded wheels")
    args = ap.parse_args(argv)
    os.makedirs(args.dest, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        wheels = {}
        for short, (req, member, digest) in SOURCES.items():
            out = os.path.join(args.dest, f"{short}.txt")
            if os.path.exists(out) and hashlib.sha256(open(out, "rb").read()).hexdigest() == digest:
                print(f"{short}: present")
                continue
            if req not in wheels:
                wheels[req] = (args.wheels and find_wheel(args.wheels, req)) or download(req, tmp)
            data = zipfile.ZipFile(wheels[req]).read(member)
            got = hashlib.sha256(data).hexdigest()
            if got != digest:
                sys.exit(f"{short}: checksum mismatch ({got})")
            with open(out, "wb") as fh:
                fh.write(data)
            rows = data.count(b"\n")
            print(f"{short}: {rows} rows -> {out}")


if __name__ == "__main__":
    main()
