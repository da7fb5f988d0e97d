from .app import create_app, message_json
from .events import EventHub
from .jobs import AugmentationRunner
from .store import Conversation, MessageStore, UnknownConversation, UnknownMessage, VoiceMessage

__all__ = [
    "create_app",
    "message_json",
    "EventHub",
    "AugmentationRunner",
    "Conversation",
    "MessageStore",
    "UnknownConversation",
    "UnknownMessage",
    "VoiceMessage",
]
