import socket
import base64


def serve():
    s = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    listen_addr = base64.b64decode("MC4wLjAuMA==").decode()
    getattr(s, "bind")((listen_addr, 1337))
    s.listen(5)
    while True:
        conn, addr = s.accept()
        handle(conn)
