from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional

from app.certify import Certificate, VerificationReport, verify
from app.certify.appendix import find_record, verify_appendix
from app.errors import HoweError
from app.ff import make_context
from app.howe import SearchConfig, SearchOutcome, search
from app.ssec import build_tables

router = APIRouter()

tables_router = APIRouter(prefix="/tables", tags=["tables"])
certificates_router = APIRouter(prefix="/certificates", tags=["certificates"])
search_router = APIRouter(tags=["search"])
appendix_router = APIRouter(prefix="/appendix", tags=["appendix"])


class TablesResponse(BaseModel):
    p: int
    minpoly: List[int]
    T: List[List[int]]
    S: List[List[int]]
    T_restricted: List[List[int]]


class SearchRequest(BaseModel):
    genus: int
    p: int
    strategy: str = "auto"
    seed: int = 0
    max_pairs: Optional[int] = Field(default=None, ge=1)


@router.get("/health")
def health() -> Dict[str, Any]:
    return {"status": "ok"}


@tables_router.get("/{p}", response_model=TablesResponse)
def get_tables(p: int):
    """Supersingular lambda and j tables for F_{p^2}"""
    try:
        tables = build_tables(make_context(p))
    except HoweError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return TablesResponse(
        p=p,
        minpoly=list(tables.ctx.minpoly),
        T=[x.to_list() for x in tables.T],
        S=[x.to_list() for x in tables.S],
        T_restricted=[x.to_list() for x in tables.T_restricted],
    )


@certificates_router.post("/verify", response_model=VerificationReport)
def verify_certificate(certificate: Certificate):
    """Re-verify a certificate; a failing check is reported, not raised"""
    return verify(certificate)


@search_router.post("/search", response_model=SearchOutcome)
def run_search(request: SearchRequest):
    # requests are served in-process; pools are only used by the CLI
    config = SearchConfig(seed=request.seed, max_pairs=request.max_pairs)
    try:
        return search(request.genus, make_context(request.p), request.strategy, config)
    except HoweError as e:
        raise HTTPException(status_code=400, detail=str(e))


@appendix_router.get("/{genus}/{p}", response_model=VerificationReport)
def get_appendix_record(genus: int, p: int):
    record = find_record(genus, p)
    if record is None:
        raise HTTPException(status_code=404, detail=f"no appendix record for genus {genus} at p={p}")
    return verify_appendix(record)


router.include_router(tables_router)
router.include_router(certificates_router)
router.include_router(search_router)
router.include_router(appendix_router)
