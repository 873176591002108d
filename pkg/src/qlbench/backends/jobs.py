"""
Job store shared by all backends.

Jobs are kept in memory and, when a path is configured, appended to a
JSON-lines file (one record per job) so later invocations can fetch them.
Completed jobs are immutable.
"""

from __future__ import annotations

import threading
import time
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from qlbench.backends.base import RawResult
from qlbench.core.errors import DataError, JobNotFoundError
from qlbench.core.logging import get_logger

logger = get_logger(__name__)


class Job(BaseModel):
    """
    A submitted job.

    Attributes:
        job_id: Unique identifier
        backend: Backend the job was submitted to
        shots: Shots per circuit
        seeds: Sampling seed per circuit
        submitted_at: Submission time
        ready_at: Time the simulated queue releases the results
        results: One raw result per circuit, in submission order
    """

    model_config = ConfigDict(frozen=True)

    job_id: str
    backend: str
    shots: int = Field(gt=0)
    seeds: tuple[int, ...]
    submitted_at: datetime
    ready_at: datetime
    results: tuple[RawResult, ...]

    @property
    def circuit_count(self) -> int:
        return len(self.results)

    def is_ready(self, now: Optional[datetime] = None) -> bool:
        return (now or datetime.now(timezone.utc)) >= self.ready_at


class JobStore:
    """Thread-safe registry of jobs with optional JSON-lines persistence."""

    def __init__(self, path: Optional[Path] = None, poll_interval: float = 0.01) -> None:
        """
        Initialize the store.

        Args:
            path: JSON-lines file to append jobs to and load them from
            poll_interval: Seconds between readiness checks in wait()
        """
        self.path = path
        self.poll_interval = poll_interval
        self._jobs: dict[str, Job] = {}
        self._lock = threading.Lock()
        if path is not None and path.exists():
            self._load(path)

    def _load(self, path: Path) -> None:
        with open(path, encoding="utf-8") as f:
            for line_number, line in enumerate(f, 1):
                if not line.strip():
                    continue
                try:
                    job = Job.model_validate_json(line)
                except ValidationError as e:
                    raise DataError(f"{path}:{line_number}: invalid job record: {e}") from e
                self._jobs[job.job_id] = job
        logger.debug("job_store_loaded", path=str(path), jobs=len(self._jobs))

    def add(
        self,
        backend: str,
        shots: int,
        seeds: list[int],
        submitted_at: datetime,
        ready_at: datetime,
        results: list[RawResult],
    ) -> Job:
        """Record a new job and persist it if a path is configured."""
        job = Job(
            job_id=uuid.uuid4().hex[:12],
            backend=backend,
            shots=shots,
            seeds=tuple(seeds),
            submitted_at=submitted_at,
            ready_at=ready_at,
            results=tuple(results),
        )
        with self._lock:
            self._jobs[job.job_id] = job
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as f:
                    f.write(job.model_dump_json() + "\n")
        return job

    def get(self, job_id: str) -> Job:
        """
        Look up a job.

        Raises:
            JobNotFoundError: If the id is unknown
        """
        with self._lock:
            job = self._jobs.get(job_id)
        if job is None:
            raise JobNotFoundError(f"unknown job: {job_id}")
        return job

    def wait(self, job_id: str) -> list[RawResult]:
        """Block until the job leaves the simulated queue, then return its results."""
        job = self.get(job_id)
        while not job.is_ready():
            remaining = (job.ready_at - datetime.now(timezone.utc)).total_seconds()
            time.sleep(max(0.0, min(self.poll_interval, remaining)))
        return list(job.results)

    def list_jobs(self, backend: Optional[str] = None) -> list[Job]:
        """Jobs in submission order, optionally for one backend."""
        with self._lock:
            jobs = list(self._jobs.values())
        if backend is not None:
            jobs = [job for job in jobs if job.backend == backend]
        return sorted(jobs, key=lambda job: job.submitted_at)

    def __len__(self) -> int:
        with self._lock:
            return len(self._jobs)
