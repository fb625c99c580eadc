from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.routes import router
from howe_config import init_logging

init_logging()

app = FastAPI(title="howe-superspecial", description="Search and certification of superspecial Howe curves")

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(router)
