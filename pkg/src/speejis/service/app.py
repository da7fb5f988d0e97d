"""HTTP + WebSocket API over the message store and augmentation pipeline.

    POST /api/conversations                      {title} -> conversation
    GET  /api/conversations/{cid}/messages       ?since=<rfc3339>
    POST /api/conversations/{cid}/messages       multipart: audio (WAV), sender
    GET  /api/messages/{mid}
    GET  /api/messages/{mid}/audio               canonical 16 kHz mono PCM16 WAV
    GET  /api/messages/{mid}/waveform.svg        ?width=&height=&segments=0|1
    GET  /api/ws?conversation={cid}              event stream, one JSON per frame

Events are live-only ({type, message_id, status}); clients backfill missed
history with the `since` listing parameter.
"""

from __future__ import annotations

import asyncio
from contextlib import asynccontextmanager

from fastapi import FastAPI, File, Form, HTTPException, Query, UploadFile, WebSocket
from fastapi.responses import PlainTextResponse, Response
from fastapi.staticfiles import StaticFiles
from starlette.websockets import WebSocketDisconnect

from ..audio import MAX_DURATION_S, decode_wav, encode_wav
from ..config import ServiceConfig, build_pipeline_config, resolve_table
from ..descriptor import to_obj
from ..errors import DecodeError, InputError
from ..svg import render_svg
from .events import DISCONNECT, EventHub
from .jobs import AugmentationRunner
from .store import (
    MessageStore,
    UnknownConversation,
    UnknownMessage,
    VoiceMessage,
    parse_rfc3339,
)


def message_json(msg: VoiceMessage) -> dict:
    return {
        "message_id": msg.message_id,
        "conversation_id": msg.conversation_id,
        "sender": msg.sender,
        "created_at": msg.created_at,
        "status": msg.status,
        "audio_ref": msg.audio_ref,
        "descriptor": None if msg.descriptor is None else to_obj(msg.descriptor),
    }


def create_app(cfg: ServiceConfig) -> FastAPI:
    cfg.validate()
    table = resolve_table(cfg)
    pipeline_cfg = build_pipeline_config(cfg)
    store = MessageStore(cfg.data_dir)
    hub = EventHub()
    runner = AugmentationRunner(store, table, pipeline_cfg, hub, workers=cfg.workers)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        hub.attach(asyncio.get_running_loop())
        # jobs interrupted by a previous shutdown or crash run again
        for msg in store.pending_messages():
            runner.submit(msg.message_id)
        yield
        runner.drain()

    app = FastAPI(title="speejis", lifespan=lifespan)
    app.state.store = store
    app.state.runner = runner
    app.state.hub = hub

    @app.post("/api/conversations", status_code=201)
    async def create_conversation(body: dict):
        title = str(body.get("title", ""))
        conv = store.create_conversation(title)
        return {
            "conversation_id": conv.conversation_id,
            "title": conv.title,
            "created_at": conv.created_at,
        }

    @app.get("/api/conversations/{cid}/messages")
    async def list_messages(cid: str, since: str | None = None):
        try:
            since_ts = parse_rfc3339(since) if since else None
        except ValueError:
            raise HTTPException(400, detail=f"bad since timestamp: {since!r}")
        try:
            msgs = store.list_messages(cid, since_ts)
        except UnknownConversation:
            raise HTTPException(404, detail=f"unknown conversation {cid}")
        return {"messages": [message_json(m) for m in msgs]}

    @app.post("/api/conversations/{cid}/messages", status_code=201)
    async def post_message(cid: str, audio: UploadFile = File(...), sender: str = Form("")):
        try:
            store.get_conversation(cid)
        except UnknownConversation:
            raise HTTPException(404, detail=f"unknown conversation {cid}")
        payload = await audio.read()
        try:
            clip = decode_wav(payload)
        except DecodeError as exc:
            raise HTTPException(422, detail=f"undecodable audio: {exc}")
        if clip.duration_s > MAX_DURATION_S:
            raise HTTPException(
                413, detail=f"message of {clip.duration_s:.1f} s exceeds {MAX_DURATION_S:.0f} s cap"
            )
        canonical = encode_wav(clip)
        ref = store.put_audio(canonical)
        msg = store.create_message(cid, sender, ref)
        hub.publish(
            cid,
            {"type": "message.created", "message_id": msg.message_id, "status": msg.status},
        )
        runner.submit(msg.message_id)
        return message_json(msg)

    @app.get("/api/messages/{mid}")
    async def get_message(mid: str):
        try:
            return message_json(store.get_message(mid))
        except UnknownMessage:
            raise HTTPException(404, detail=f"unknown message {mid}")

    @app.get("/api/messages/{mid}/audio")
    async def get_audio(mid: str):
        try:
            msg = store.get_message(mid)
            data = store.get_audio(msg.audio_ref)
        except UnknownMessage:
            raise HTTPException(404, detail=f"unknown message {mid}")
        return Response(content=data, media_type="audio/wav")

    @app.get("/api/messages/{mid}/waveform.svg")
    async def get_waveform(
        mid: str,
        width: float = Query(640.0, gt=0),
        height: float = Query(96.0, gt=0),
        segments: int = Query(0, ge=0, le=1),
    ):
        try:
            msg = store.get_message(mid)
        except UnknownMessage:
            raise HTTPException(404, detail=f"unknown message {mid}")
        if msg.descriptor is None:
            raise HTTPException(409, detail="message is still processing")
        try:
            svg = render_svg(msg.descriptor, width, height, show_segment_emojis=bool(segments))
        except InputError as exc:
            raise HTTPException(400, detail=str(exc))
        return PlainTextResponse(content=svg, media_type="image/svg+xml")

    @app.websocket("/api/ws")
    async def event_stream(ws: WebSocket, conversation: str = Query(...)):
        try:
            store.get_conversation(conversation)
        except UnknownConversation:
            await ws.close(code=1008)  # refused: unknown conversation
            return
        await ws.accept()
        queue = hub.subscribe(conversation)
        try:
            while True:
                event = await queue.get()
                if event is DISCONNECT:
                    await ws.close(code=1013)  # subscriber too slow
                    return
                await ws.send_json(event)
        except WebSocketDisconnect:
            pass
        finally:
            hub.unsubscribe(conversation, queue)

    if cfg.static_dir is not None:
        app.mount("/", StaticFiles(directory=cfg.static_dir, html=True), name="ui")

    return app
