"""Background augmentation jobs: one job per message, a small worker pool.

Jobs are independent across messages; each decodes the stored canonical
audio, runs the pipeline, persists the descriptor, and fans out the
`message.augmented` event. Unexpected failures mark the message failed
rather than leaving it processing forever.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import FIRST_COMPLETED, Future, ThreadPoolExecutor, wait

from ..audio import decode_wav
from ..descriptor import STATUS_FAILED
from ..emotion import EmojiTable
from ..pipeline import PipelineConfig, augment
from .events import EventHub
from .store import MessageStore

logger = logging.getLogger(__name__)

DRAIN_TIMEOUT_S = 10.0


class AugmentationRunner:
    def __init__(
        self,
        store: MessageStore,
        table: EmojiTable,
        pipeline_cfg: PipelineConfig,
        hub: EventHub,
        workers: int = 4,
    ):
        self.store = store
        self.table = table
        self.pipeline_cfg = pipeline_cfg
        self.hub = hub
        self._pool = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="augment")
        self._inflight: set[Future] = set()

    def submit(self, message_id: str) -> None:
        future = self._pool.submit(self._run, message_id)
        self._inflight.add(future)
        future.add_done_callback(self._inflight.discard)

    def _run(self, message_id: str) -> None:
        msg = self.store.get_message(message_id)
        try:
            clip = decode_wav(self.store.get_audio(msg.audio_ref))
            descriptor = augment(clip, self.table, self.pipeline_cfg, message_id=message_id)
            status = descriptor.status
        except Exception:
            logger.exception("augmentation job for %s failed unexpectedly", message_id)
            descriptor, status = None, STATUS_FAILED
        self.store.complete_message(message_id, descriptor, status)
        self.hub.publish(
            msg.conversation_id,
            {"type": "message.augmented", "message_id": message_id, "status": status},
        )

    def drain(self, timeout_s: float = DRAIN_TIMEOUT_S) -> None:
        """Let in-flight jobs finish, bounded by the timeout."""
        pending = set(self._inflight)
        deadline = time.monotonic() + timeout_s
        while pending:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                break
            done, pending = wait(pending, timeout=remaining, return_when=FIRST_COMPLETED)
        self._pool.shutdown(wait=False, cancel_futures=True)
