"""
Event bus for progress and diagnostics reporting.
Uses publish-subscribe so that the bench runner knows nothing about
progress bars, and the CLI nothing about the runner's internals.
"""

import inspect
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

logger = logging.getLogger(__name__)


class EventType(Enum):
    """Event types published by the library."""
    # Bench events
    BENCH_STARTED = "bench.started"
    RUN_FINISHED = "bench.run_finished"
    BENCH_FINISHED = "bench.finished"

    # Verification events
    CHECK_FAILED = "verify.check_failed"

    # Output events
    PROFILE_WRITTEN = "profiles.written"


@dataclass
class Event:
    """Event data class."""
    event_type: EventType
    data: Any = None
    source: str = None

    def __str__(self):
        return f"Event({self.event_type}, source={self.source or 'nmls'})"


class EventBus:
    """Process-wide publish/subscribe hub."""

    _instance = None

    def __new__(cls):
        """Singleton pattern."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialize()
        return cls._instance

    def _initialize(self):
        self._subscribers: Dict[EventType, List[Callable]] = {}

    def subscribe(self, event_type: EventType):
        """
        Decorator to subscribe a function to an event type.

        Args:
            event_type: Event type to subscribe to

        Returns:
            Decorator function
        """
        def decorator(func):
            subscribers = self._subscribers.setdefault(event_type, [])
            if func not in subscribers:
                subscribers.append(func)
            return func
        return decorator

    def unsubscribe(self, func: Callable, event_type: Optional[EventType] = None):
        """
        Unsubscribe a function from an event type or all events.

        Args:
            func: Function to unsubscribe
            event_type: Event type to unsubscribe from. If None, unsubscribes from all events.
        """
        if event_type is None:
            for subscribers in self._subscribers.values():
                if func in subscribers:
                    subscribers.remove(func)
        elif func in self._subscribers.get(event_type, []):
            self._subscribers[event_type].remove(func)

    def publish(self, event: Event):
        """
        Publish an event to all subscribers.

        Subscriber errors are logged and never reach the publisher.

        Args:
            event: Event to publish
        """
        if not isinstance(event, Event):
            raise ValueError("Event must be an instance of Event class")

        for subscriber in list(self._subscribers.get(event.event_type, [])):
            try:
                self._call_subscriber(subscriber, event)
            except Exception as e:
                logger.error(f"Error in subscriber for {event.event_type}: {e}", exc_info=True)

    def _call_subscriber(self, subscriber: Callable, event: Event):
        """
        Call a subscriber with the arguments its signature asks for.

        Args:
            subscriber: Subscriber function
            event: Event to pass to the subscriber
        """
        params = inspect.signature(subscriber).parameters

        if len(params) == 0:
            subscriber()
        elif len(params) == 1:
            subscriber(event)
        else:
            available = {
                'event': event,
                'event_type': event.event_type,
                'data': event.data,
                'source': event.source,
            }
            kwargs = {name: available[name] for name in params if name in available}
            required = [
                name for name, param in params.items()
                if param.default is inspect.Parameter.empty
                and param.kind not in (param.VAR_KEYWORD, param.VAR_POSITIONAL)
            ]
            if all(name in kwargs for name in required):
                subscriber(**kwargs)

    def clear(self) -> None:
        """Drop all subscribers."""
        self._initialize()


# Global event bus instance
event_bus = EventBus()


def on_event(event_type: EventType):
    """
    Decorator to subscribe a function to an event type.

    Args:
        event_type: Event type to subscribe to
    """
    return event_bus.subscribe(event_type)


def publish(event: Event):
    """Publish an event to the global event bus."""
    event_bus.publish(event)
