"""Chat-completion backends for the LLM planner"""

import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from loguru import logger
from openai import OpenAI

from ..errors import BackendError

Message = Dict[str, str]


class ChatBackend(ABC):
    """Abstract chat-completion client"""

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def complete(self, messages: List[Message]) -> str:
        """
        Send a conversation and return the assistant's reply text.

        Args:
            messages: [{"role": ..., "content": ...}, ...]

        Returns:
            Reply text

        Raises:
            BackendError: On transport or service failure
        """
        pass


class OpenAIChatBackend(ChatBackend):
    """Any OpenAI-compatible chat-completions endpoint"""

    def __init__(
        self,
        api_key: str,
        base_url: Optional[str] = None,
        model: str = "gpt-4",
        temperature: float = 0.0,
        timeout: float = 60.0,
        client: Optional[Any] = None
    ):
        """
        Initialize the backend.

        Args:
            api_key: API key for the endpoint
            base_url: Endpoint URL (OpenAI when None)
            model: Model name sent with every request
            temperature: Sampling temperature
            timeout: Request timeout (s)
            client: Pre-built client, mainly for tests
        """
        super().__init__(name=f"openai:{model}")
        if not api_key:
            raise ValueError("API key is required. Set OPENAI_API_KEY in environment or .env file")
        self.model = model
        self.temperature = temperature
        self.client = client or OpenAI(api_key=api_key, base_url=base_url, timeout=timeout)
        logger.info(f"Initialized chat backend {self.name} at {base_url or 'default endpoint'}")

    def complete(self, messages: List[Message]) -> str:
        try:
            response = self.client.chat.completions.create(
                model=self.model,
                messages=messages,
                temperature=self.temperature,
            )
        except Exception as e:
            logger.error(f"Chat completion failed: {e}")
            raise BackendError(f"Chat completion request failed: {e}") from e
        if not response.choices:
            raise BackendError("Chat completion returned no choices")
        return response.choices[0].message.content or ""


class ReplayBackend(ChatBackend):
    """
    Canned responses served in order; the last one repeats.

    An entry may be a string or {"error": "..."}, which raises BackendError
    when served.
    """

    def __init__(self, responses: List[Union[str, Dict[str, str]]], name: str = "replay"):
        super().__init__(name=name)
        if not responses:
            raise ValueError("ReplayBackend needs at least one response")
        self.responses = list(responses)
        self.calls: List[List[Message]] = []

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ReplayBackend":
        """Load a fixture file of the form {"responses": [...]}"""
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise BackendError(f"Cannot read replay fixture {path}: {e}") from e
        responses = data.get("responses") if isinstance(data, dict) else None
        if not isinstance(responses, list) or not responses:
            raise BackendError(f"Replay fixture {path} needs a non-empty 'responses' list")
        logger.info(f"Loaded {len(responses)} canned responses from {path}")
        return cls(responses, name=f"replay:{path.name}")

    def complete(self, messages: List[Message]) -> str:
        self.calls.append([dict(m) for m in messages])
        entry = self.responses[min(len(self.calls), len(self.responses)) - 1]
        if isinstance(entry, dict):
            raise BackendError(str(entry.get("error", "replayed backend failure")))
        return str(entry)
