"""Drive the HTTP session service end to end over a real socket.

A uvicorn server is started in a background thread, then exercised with
plain stdlib HTTP calls: list scenarios, create a session, inspect the legal
action set, step a wall, provoke a violation and a validation error, reset
back to the same seeded board, and delete the session. Every response the
browser frontend consumes is shown here in raw form.

Run:  python3 demos/06_service_roundtrip.py
"""

import json
import threading
import time
import urllib.error
import urllib.request

import uvicorn

from laserwall.service import create_app

BASE = "http://127.0.0.1:8741"


def api(method: str, path: str, body: dict | None = None) -> tuple[int, dict | list | None]:
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(BASE + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as resp:
            raw = resp.read()
            return resp.status, json.loads(raw) if raw else None
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


def main() -> None:
    server = uvicorn.Server(uvicorn.Config(create_app(), host="127.0.0.1",
                                           port=8741, log_level="warning"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    while not server.started:
        time.sleep(0.05)
    print(f"service up at {BASE}\n")

    try:
        status, scenarios = api("GET", "/scenarios")
        print(f"GET /scenarios -> {status}, {len(scenarios)} scenarios:")
        for sc in scenarios:
            print(f"  {sc['id']}: {sc['n_rooms']} rooms,"
                  f" {sc['grid']['width']}x{sc['grid']['height']},"
                  f" entrance {sc['entrance_facade']}")

        status, session = api("POST", "/sessions",
                              {"scenario": 2, "seed": 12, "max_steps": 60})
        sid = session["session_id"]
        print(f"\nPOST /sessions -> {status}, session {sid[:8]}...,"
              f" closeness {session['closeness']:.3f}")
        print("connection checklist:")
        for row in session["connections"]:
            mark = "ok" if row["satisfied"] else "--"
            print(f"  [{mark}] room {row['room']} -> {row['kind']}")

        status, actions = api("GET", f"/sessions/{sid}/actions")
        legal = actions["actions"]
        print(f"\nGET /actions -> {status}, {len(legal)} legal actions;"
              f" first: wall {legal[0]['wall_id']} {legal[0]['transformation']}")

        status, stepped = api("POST", f"/sessions/{sid}/step",
                              {"wall_id": legal[0]["wall_id"],
                               "transformation": legal[0]["transformation"]})
        print(f"POST /step -> {status}, outcome {stepped['outcome']},"
              f" closeness {stepped['closeness']:.3f},"
              f" reward {stepped['reward']['total']:.2f}")

        mask = stepped["action_mask"]
        names = stepped["transformation_names"]
        blocked = mask.index(False)
        status, violated = api("POST", f"/sessions/{sid}/step",
                               {"wall_id": blocked // len(names),
                                "transformation": names[blocked % len(names)]})
        print(f"POST /step (masked-out) -> {status},"
              f" outcome {violated['outcome']},"
              f" reward {violated['reward']['total']:.2f}")

        status, err = api("POST", f"/sessions/{sid}/step",
                          {"wall_id": 0, "transformation": "teleport"})
        print(f"POST /step (bad transformation) -> {status},"
              f" error {err['detail']['error']}")

        status, reset = api("POST", f"/sessions/{sid}/reset", {"seed": 12})
        same = reset["rooms"] == session["rooms"]
        print(f"POST /reset (seed 12) -> {status}, board identical to the"
              f" original: {same}")

        status, _ = api("DELETE", f"/sessions/{sid}")
        print(f"DELETE /sessions -> {status}")
        status, gone = api("GET", f"/sessions/{sid}/state")
        print(f"GET /state after delete -> {status},"
              f" error {gone['detail']['error']}")
    finally:
        server.should_exit = True
        thread.join(timeout=5)
    print("\nservice stopped")


if __name__ == "__main__":
    main()
