"""Per-conversation event fan-out.

Subscribers get a bounded queue; a subscriber that falls behind is
disconnected rather than buffered without limit, so slow clients can
never stall ingestion. Publishing is thread-safe once the hub is attached
to the service event loop.
"""

from __future__ import annotations

import asyncio
import threading

DISCONNECT = object()  # sentinel: subscriber was too slow, close it

QUEUE_SIZE = 256


class EventHub:
    def __init__(self):
        self._loop: asyncio.AbstractEventLoop | None = None
        self._subs: dict[str, set[asyncio.Queue]] = {}
        self._lock = threading.Lock()

    def attach(self, loop: asyncio.AbstractEventLoop) -> None:
        self._loop = loop

    def subscribe(self, cid: str) -> asyncio.Queue:
        q: asyncio.Queue = asyncio.Queue(maxsize=QUEUE_SIZE)
        with self._lock:
            self._subs.setdefault(cid, set()).add(q)
        return q

    def unsubscribe(self, cid: str, q: asyncio.Queue) -> None:
        with self._lock:
            subs = self._subs.get(cid)
            if subs is not None:
                subs.discard(q)
                if not subs:
                    self._subs.pop(cid, None)

    def _dispatch(self, cid: str, event: dict) -> None:
        with self._lock:
            queues = list(self._subs.get(cid, ()))
        for q in queues:
            try:
                q.put_nowait(event)
            except asyncio.QueueFull:
                # drop the laggard: clear its backlog and tell it to go away
                self.unsubscribe(cid, q)
                while not q.empty():
                    try:
                        q.get_nowait()
                    except asyncio.QueueEmpty:
                        break
                q.put_nowait(DISCONNECT)

    def publish(self, cid: str, event: dict) -> None:
        """Safe from any thread; a no-op until the hub is attached."""
        loop = self._loop
        if loop is None or loop.is_closed():
            return
        if threading.current_thread() is threading.main_thread() and loop.is_running():
            try:
                running = asyncio.get_running_loop()
            except RuntimeError:
                running = None
            if running is loop:
                self._dispatch(cid, event)
                return
        loop.call_soon_threadsafe(self._dispatch, cid, event)
