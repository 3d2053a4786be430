#!/usr/bin/env python3
# Runs every hillspec subcommand with small settings and validates each JSON artifact.
import json
import pathlib
import subprocess
import sys

import jsonschema


def main():
    if len(sys.argv) != 4:
        sys.exit("usage: check_schemas.py <hillspec> <schemas dir> <workdir>")
    exe, schemas, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    work.mkdir(parents=True, exist_ok=True)

    def schema(name):
        s = json.loads((schemas / f"{name}.schema.json").read_text())
        jsonschema.Draft202012Validator.check_schema(s)
        return jsonschema.Draft202012Validator(s)

    potential = schema("potential")
    config = schema("config")

    # fourier-coefficient input file: q(x) = 0.4 cos 2x + 0.1i sin 4x
    pfile = work / "potential.json"
    pfile.write_text(json.dumps({"label": "custom", "fourier": {"1": [0.2, 0], "-1": [0.2, 0],
                                                                "2": [0.05, 0], "-2": [-0.05, 0]}}))

    runs = [
        ("spectra", ["--preset", "mathieu:0.5", "--kmax", "3"], 0),
        ("spectra", ["--potential-file", str(pfile), "--kmax", "3"], 0),
        ("portrait", ["--preset", "mathieu:0.5", "--kmax", "3"], 0),
        ("portrait", ["--preset", "gasymov:1", "--kmax", "3"], 0),
        ("criterion", ["--preset", "zero"], 0),
        ("criterion", ["--preset", "zero", "--kmax", "4"], 2),
        ("criterion", ["--preset", "gasymov:1", "--kmax", "4"], 1),
        ("project", ["--preset", "mathieu:0.5", "--kmax", "3", "--cells", "8", "--ppc", "32", "--band", "1"], 0),
        ("expand", ["--preset", "mathieu:0.5", "--kmax", "3", "--cells", "8", "--ppc", "32", "--band-max", "2"], 0),
        ("greens", ["--preset", "mathieu:0.5", "--z", "2+1i", "--n", "21"], 0),
        ("validate", ["--preset", "zero", "--kmax", "3"], 0),
    ]
    failures = 0
    for i, (sub, args, want) in enumerate(runs):
        out = work / f"{i:02d}_{sub}"
        proc = subprocess.run([exe, sub, *args, "--out", str(out)], capture_output=True, text=True)
        label = f"{sub} {' '.join(args)}"
        if proc.returncode != want:
            print(f"FAIL {label}: exit {proc.returncode}, expected {want}\n{proc.stderr}")
            failures += 1
            continue
        checks = [(out / "config.json", config), (out / f"{sub}.json", schema(sub))]
        for path, v in checks:
            try:
                doc = json.loads(path.read_text())
                v.validate(doc)
                if "potential" in doc and path.name != "config.json":
                    potential.validate(doc["potential"])
            except (OSError, json.JSONDecodeError, jsonschema.ValidationError) as e:
                print(f"FAIL {label}: {path.name}: {e}")
                failures += 1
                continue
            print(f"ok   {label}: {path.name}")
    if failures:
        sys.exit(f"{failures} schema failures")


if __name__ == "__main__":
    main()
