"""Freeze golden hashes for one reset frame per environment.

Drives `visualenv serve --transport stdio`, decodes obs_b64 with the Python
stdlib and hashes the newest frame (every 4th byte, depth innermost) and the
whole stacked tensor. Rerun only when a rendering change is intended.

usage: golden_hashes.py <visualenv binary> <output json>
"""
import base64
import hashlib
import json
import subprocess
import sys

ENVS = ["cartpole", "hover2d", "goalie"]
SEED = 0


def reset_tensor(cli, env):
    script = "\n".join([
        json.dumps({"type": "hello", "env": env}),
        json.dumps({"type": "reset", "seed": SEED}),
        json.dumps({"type": "close"}),
    ]) + "\n"
    out = subprocess.run([cli, "serve", "--transport", "stdio"], input=script.encode(),
                         capture_output=True, check=True).stdout.decode().splitlines()
    obs = json.loads(out[1])
    assert obs["type"] == "obs", obs
    return base64.b64decode(obs["obs_b64"], validate=True)


def main():
    cli, path = sys.argv[1], sys.argv[2]
    doc = {"seed": SEED, "frames": {}}
    for env in ENVS:
        tensor = reset_tensor(cli, env)
        assert len(tensor) == 100 * 100 * 4
        frame = tensor[3::4]
        doc["frames"][env] = {
            "frame_sha256": hashlib.sha256(frame).hexdigest(),
            "tensor_sha256": hashlib.sha256(tensor).hexdigest(),
        }
    with open(path, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
