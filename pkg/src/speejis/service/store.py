"""Append-only persistence for conversations and voice messages.

Layout under the data directory:

    audio/<sha256>.wav            content-addressed canonical WAV blobs
    conversations.jsonl           conversation registry, one JSON per line
    conversations/<cid>.jsonl     per-conversation message log

Log record types:

    conversation.created  {conversation_id, title, created_at}
    message.created       {message_id, conversation_id, sender, created_at, audio_ref}
    message.augmented     {message_id, status, descriptor}

State is rebuilt by replaying the logs at startup; for a message the last
record wins. Audio blobs are written (and fsynced) before the message
record, so a listed message always has playable audio; a message whose
blob is somehow missing is dropped from the index at rebuild. A trailing
partially-written line, the footprint of a crash during append, is
ignored. Writes are serialized by one lock; reads hand out immutable
records without locking.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from ..descriptor import AugmentationDescriptor, STATUS_DONE, canonical_json, parse_descriptor, to_obj
from ..errors import InputError

STATUS_PROCESSING = "processing"


def utc_now_rfc3339() -> str:
    return datetime.now(timezone.utc).isoformat()


def parse_rfc3339(value: str) -> datetime:
    return datetime.fromisoformat(value.replace("Z", "+00:00"))


@dataclass(frozen=True)
class VoiceMessage:
    message_id: str
    conversation_id: str
    sender: str
    created_at: str
    audio_ref: str
    status: str
    descriptor: AugmentationDescriptor | None = None


@dataclass(frozen=True)
class Conversation:
    conversation_id: str
    title: str
    created_at: str


class UnknownConversation(InputError):
    pass


class UnknownMessage(InputError):
    pass


class MessageStore:
    def __init__(self, data_dir: str | Path):
        self.root = Path(data_dir)
        self.audio_dir = self.root / "audio"
        self.conv_dir = self.root / "conversations"
        self.registry_path = self.root / "conversations.jsonl"
        self.audio_dir.mkdir(parents=True, exist_ok=True)
        self.conv_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._conversations: dict[str, Conversation] = {}
        self._messages: dict[str, VoiceMessage] = {}
        self._order: dict[str, list[str]] = {}  # cid -> message ids, creation order
        self._rebuild()

    # -- rebuild -----------------------------------------------------------

    def _read_log(self, path: Path) -> list[dict]:
        if not path.exists():
            return []
        records = []
        lines = path.read_bytes().split(b"\n")
        for i, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line.decode("utf-8")))
            except (json.JSONDecodeError, UnicodeDecodeError):
                if i >= len(lines) - 2:
                    continue  # torn final line from a crash mid-append
                raise
        return records

    def _rebuild(self) -> None:
        for rec in self._read_log(self.registry_path):
            if rec.get("type") == "conversation.created":
                conv = Conversation(rec["conversation_id"], rec.get("title", ""), rec["created_at"])
                self._conversations[conv.conversation_id] = conv
                self._order.setdefault(conv.conversation_id, [])

        for cid in self._conversations:
            for rec in self._read_log(self.conv_dir / f"{cid}.jsonl"):
                rtype = rec.get("type")
                if rtype == "message.created":
                    ref = rec["audio_ref"]
                    if not (self.audio_dir / f"{ref}.wav").exists():
                        continue  # never list a message without stored audio
                    msg = VoiceMessage(
                        message_id=rec["message_id"],
                        conversation_id=cid,
                        sender=rec.get("sender", ""),
                        created_at=rec["created_at"],
                        audio_ref=ref,
                        status=STATUS_PROCESSING,
                    )
                    self._messages[msg.message_id] = msg
                    self._order[cid].append(msg.message_id)
                elif rtype == "message.augmented":
                    mid = rec["message_id"]
                    if mid not in self._messages:
                        continue
                    desc = None
                    if rec.get("descriptor") is not None:
                        desc = parse_descriptor(rec["descriptor"])
                    self._messages[mid] = replace(
                        self._messages[mid], status=rec["status"], descriptor=desc
                    )

    # -- low-level writes --------------------------------------------------

    def _append(self, path: Path, record: dict) -> None:
        line = canonical_json(record) + "\n"
        with open(path, "a", encoding="utf-8") as f:
            f.write(line)
            f.flush()
            os.fsync(f.fileno())

    def _write_blob(self, path: Path, data: bytes) -> None:
        tmp = path.with_suffix(".tmp-" + uuid.uuid4().hex[:8])
        with open(tmp, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
        dir_fd = os.open(path.parent, os.O_RDONLY)
        try:
            os.fsync(dir_fd)
        finally:
            os.close(dir_fd)

    # -- conversations -----------------------------------------------------

    def create_conversation(self, title: str) -> Conversation:
        conv = Conversation(uuid.uuid4().hex, title, utc_now_rfc3339())
        with self._lock:
            self._append(
                self.registry_path,
                {
                    "type": "conversation.created",
                    "conversation_id": conv.conversation_id,
                    "title": conv.title,
                    "created_at": conv.created_at,
                },
            )
            self._conversations[conv.conversation_id] = conv
            self._order[conv.conversation_id] = []
        return conv

    def get_conversation(self, cid: str) -> Conversation:
        conv = self._conversations.get(cid)
        if conv is None:
            raise UnknownConversation(cid)
        return conv

    def conversations(self) -> list[Conversation]:
        return sorted(self._conversations.values(), key=lambda c: (c.created_at, c.conversation_id))

    # -- audio blobs -------------------------------------------------------

    def put_audio(self, canonical_wav: bytes) -> str:
        ref = hashlib.sha256(canonical_wav).hexdigest()
        path = self.audio_dir / f"{ref}.wav"
        if not path.exists():
            self._write_blob(path, canonical_wav)
        return ref

    def get_audio(self, ref: str) -> bytes:
        path = self.audio_dir / f"{ref}.wav"
        if not path.exists():
            raise UnknownMessage(f"audio blob {ref} not found")
        return path.read_bytes()

    # -- messages ----------------------------------------------------------

    def create_message(self, cid: str, sender: str, audio_ref: str) -> VoiceMessage:
        self.get_conversation(cid)
        msg = VoiceMessage(
            message_id=uuid.uuid4().hex,
            conversation_id=cid,
            sender=sender,
            created_at=utc_now_rfc3339(),
            audio_ref=audio_ref,
            status=STATUS_PROCESSING,
        )
        with self._lock:
            self._append(
                self.conv_dir / f"{cid}.jsonl",
                {
                    "type": "message.created",
                    "message_id": msg.message_id,
                    "conversation_id": cid,
                    "sender": sender,
                    "created_at": msg.created_at,
                    "audio_ref": audio_ref,
                },
            )
            self._messages[msg.message_id] = msg
            self._order[cid].append(msg.message_id)
        return msg

    def complete_message(
        self, mid: str, descriptor: AugmentationDescriptor | None, status: str
    ) -> VoiceMessage:
        if status == STATUS_DONE and (descriptor is None or descriptor.status != STATUS_DONE):
            raise InputError("done status requires a done descriptor")
        with self._lock:
            msg = self._messages.get(mid)
            if msg is None:
                raise UnknownMessage(mid)
            self._append(
                self.conv_dir / f"{msg.conversation_id}.jsonl",
                {
                    "type": "message.augmented",
                    "message_id": mid,
                    "status": status,
                    "descriptor": None if descriptor is None else to_obj(descriptor),
                },
            )
            msg = replace(msg, status=status, descriptor=descriptor)
            self._messages[mid] = msg
        return msg

    def get_message(self, mid: str) -> VoiceMessage:
        msg = self._messages.get(mid)
        if msg is None:
            raise UnknownMessage(mid)
        return msg

    def list_messages(self, cid: str, since: datetime | None = None) -> list[VoiceMessage]:
        self.get_conversation(cid)
        msgs = [self._messages[mid] for mid in self._order.get(cid, [])]
        if since is not None:
            msgs = [m for m in msgs if parse_rfc3339(m.created_at) > since]
        return sorted(msgs, key=lambda m: (m.created_at, m.message_id))

    def pending_messages(self) -> list[VoiceMessage]:
        """Messages still marked processing; re-enqueued after a restart."""
        return sorted(
            (m for m in self._messages.values() if m.status == STATUS_PROCESSING),
            key=lambda m: (m.created_at, m.message_id),
        )
